#ifndef SPRAYLAB_CLI_UTIL_HPP
#define SPRAYLAB_CLI_UTIL_HPP

#include <cstdint>
#include <memory>
#include <string>

#include "spraylab/spraylab.h"

namespace cli {

/// Failure that carries the process exit code: 2 for configuration and
/// validation problems, 3 for numerical ones.
struct CliError {
  int exit_code;
  std::string kind;
  std::string message;
};

[[noreturn]] inline void fail_config(const std::string& field, const std::string& why) {
  throw CliError{2, "config", field + ": " + why};
}

/// Map a library status to the exit-code classes.
inline void check(slb_status st, const std::string& context) {
  if (st == SLB_OK) return;
  std::string msg = context + ": " + slb_last_error();
  switch (st) {
    case SLB_ERR_VALIDATION:
      throw CliError{2, "validation", msg};
    case SLB_ERR_LOOKUP:
      throw CliError{2, "lookup", msg};
    case SLB_ERR_UNSUPPORTED:
      throw CliError{2, "unsupported", msg};
    case SLB_ERR_DOMAIN:
      throw CliError{3, "domain", msg};
    case SLB_ERR_REGULARITY:
      throw CliError{3, "regularity", msg};
    case SLB_ERR_CAPACITY:
      throw CliError{3, "capacity", msg};
    case SLB_ERR_INTEGRATION:
      throw CliError{3, "integration", msg};
    default:
      throw CliError{3, "internal", msg};
  }
}

struct AlgebraDeleter {
  void operator()(slb_algebra* p) const { slb_algebra_free(p); }
};
struct SprayDeleter {
  void operator()(slb_spray* p) const { slb_spray_free(p); }
};
struct CurveDeleter {
  void operator()(slb_curve* p) const { slb_curve_free(p); }
};
struct TrajectoryDeleter {
  void operator()(slb_trajectory* p) const { slb_trajectory_free(p); }
};
struct RepDeleter {
  void operator()(slb_rep* p) const { slb_rep_free(p); }
};

using AlgebraPtr = std::unique_ptr<slb_algebra, AlgebraDeleter>;
using SprayPtr = std::unique_ptr<slb_spray, SprayDeleter>;
using CurvePtr = std::unique_ptr<slb_curve, CurveDeleter>;
using TrajectoryPtr = std::unique_ptr<slb_trajectory, TrajectoryDeleter>;
using RepPtr = std::unique_ptr<slb_rep, RepDeleter>;

inline uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace cli

#endif
