#ifndef SPRAYLAB_CLI_CONFIG_HPP
#define SPRAYLAB_CLI_CONFIG_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "util.hpp"

namespace cli {

using ojson = nlohmann::ordered_json;

/// Load a JSON config and apply --set overrides (dotted leaf paths, value
/// parsed as JSON when possible, else taken as a string).
ojson load_config(const std::string& path, const std::vector<std::string>& overrides);

/// Read a length-dim vector field (1-based basis order) with addressed errors.
std::vector<double> get_vector(const ojson& node, const std::string& field, int dim);

/// Typed accessors; every failure is a CliError naming `path`.
const ojson& require(const ojson& node, const std::string& field, const std::string& path);
double as_number(const ojson& node, const std::string& path);
int as_int(const ojson& node, const std::string& path);
std::string as_string(const ojson& node, const std::string& path);
std::vector<double> as_vector(const ojson& node, const std::string& path, int dim);
std::vector<double> as_matrix(const ojson& node, const std::string& path, int dim);

AlgebraPtr build_algebra(const ojson& cfg);
SprayPtr build_spray(const ojson& cfg, const slb_algebra* g);
slb_integrator_config build_integrator(const ojson& cfg);
CurvePtr build_curve(const ojson& node, const std::string& field, int dim);

struct OutputSpec {
  std::string format;  // "csv" or "json"; empty = task default
  std::string path;    // empty = stdout
  int precision = 17;
};

OutputSpec build_output(const ojson& cfg);

}  // namespace cli

#endif
