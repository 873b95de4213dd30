#ifndef SPRAYLAB_CORE_VERIFY_HPP
#define SPRAYLAB_CORE_VERIFY_HPP

#include <string>
#include <vector>

#include "core/integrate.hpp"
#include "core/spray.hpp"

namespace spraylab {

/// Result of one property suite: the largest residual seen over all its
/// checks, against the suite's fixed tolerance.
struct CheckResult {
  std::string name;
  int checks = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct VerifyReport {
  std::vector<CheckResult> suites;
  bool all_passed = true;
};

/// Run the structural property suites against a spray: algebra identities,
/// homogeneity, connection identities, metric/conservation laws (metric
/// variants), transport reversibility, curvature route agreement, bracket
/// antisymmetry, and the catalog matrix presentation when one exists.
/// Deterministic for a fixed seed.
VerifyReport run_verify(const SprayField& s, const IntegratorConfig& cfg = {},
                        unsigned long long seed = 20240901ULL);

}  // namespace spraylab

#endif
