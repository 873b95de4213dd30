// spraylab command-line front end.  Parses a JSON run config, dispatches the
// requested task through the shared-library C interface, and writes CSV/JSON
// artifacts with a provenance header.
//
// Exit codes: 0 success, 2 configuration/validation error, 3 numerical
// failure (partial artifacts plus a status JSON where possible).

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "util.hpp"

namespace cli {
namespace {

constexpr unsigned long long kDefaultSeed = 20240901ULL;

struct Provenance {
  std::string version;
  std::string config_hash;  // 16 hex digits of the post-override config text
  unsigned long long seed;
};

std::string format_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string hash_hex(uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

ojson provenance_json(const Provenance& p) {
  ojson j;
  j["tool"] = "spraylab";
  j["version"] = p.version;
  j["config"] = p.config_hash;
  j["seed"] = p.seed;
  return j;
}

std::string provenance_comment(const Provenance& p) {
  return "# spraylab " + p.version + " config=" + p.config_hash +
         " seed=" + std::to_string(p.seed) + "\n";
}

void write_text(const OutputSpec& out, const std::string& text) {
  if (out.path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw CliError{2, "io", out.path + ": cannot open for writing"};
  f << text;
  if (!f) throw CliError{2, "io", out.path + ": write failed"};
}

void write_json(const OutputSpec& out, const ojson& j) {
  write_text(out, j.dump(2) + "\n");
}

/// Status report for numerical failures: next to the artifact when writing
/// to a file, on stderr when the artifact goes to stdout.
void emit_status(const OutputSpec& out, const Provenance& prov, const std::string& kind,
                 const std::string& message, bool partial_artifact) {
  ojson j;
  j["provenance"] = provenance_json(prov);
  j["status"] = "numerical-failure";
  j["kind"] = kind;
  j["message"] = message;
  j["exit_code"] = 3;
  j["partial_artifact"] = partial_artifact;
  std::string text = j.dump(2) + "\n";
  if (out.path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stderr);
  } else {
    std::ofstream f(out.path + ".status.json", std::ios::binary);
    if (f) f << text;
  }
}

void check_keys(const ojson& node, const std::string& path, std::set<std::string> allowed) {
  for (auto it = node.begin(); it != node.end(); ++it)
    if (!allowed.count(it.key())) fail_config(path + "." + it.key(), "unknown field");
}

std::pair<double, double> get_span(const ojson& task) {
  const ojson& span = require(task, "t_span", "task");
  std::vector<double> ts = as_vector(span, "task.t_span", 2);
  return {ts[0], ts[1]};
}

void resolve_format(OutputSpec& out, const std::string& task_type, bool csv_capable) {
  if (out.format.empty()) out.format = csv_capable ? "csv" : "json";
  if (out.format == "csv" && !csv_capable)
    fail_config("output.format", "task '" + task_type + "' emits JSON only");
}

/* ---- trajectory emission ----------------------------------------------- */

struct TrajectoryData {
  long size = 0;
  int dim = 0;
  int status = SLB_TRAJECTORY_COMPLETE;
  std::vector<double> times;
  std::vector<double> states;
};

TrajectoryData fetch(const slb_trajectory* tr, const std::string& context) {
  TrajectoryData d;
  d.size = slb_trajectory_size(tr);
  d.dim = slb_trajectory_dim(tr);
  d.status = slb_trajectory_status(tr);
  d.times.resize(static_cast<std::size_t>(d.size));
  d.states.resize(static_cast<std::size_t>(d.size) * d.dim);
  check(slb_trajectory_nodes(tr, d.times.data(), d.states.data()), context);
  return d;
}

std::string status_name(int status) {
  return status == SLB_TRAJECTORY_COMPLETE ? "complete" : "domain-exit";
}

void emit_trajectory(const OutputSpec& out, const Provenance& prov, const TrajectoryData& d,
                     const std::string& label) {
  if (out.format == "csv") {
    std::ostringstream os;
    os << provenance_comment(prov);
    os << "t";
    for (int i = 1; i <= d.dim; ++i) os << "," << label << i;
    os << "\n";
    for (long k = 0; k < d.size; ++k) {
      os << format_double(d.times[static_cast<std::size_t>(k)], out.precision);
      for (int i = 0; i < d.dim; ++i)
        os << ","
           << format_double(d.states[static_cast<std::size_t>(k) * d.dim + i], out.precision);
      os << "\n";
    }
    write_text(out, os.str());
    return;
  }
  ojson j;
  j["provenance"] = provenance_json(prov);
  j["status"] = status_name(d.status);
  j["t"] = d.times;
  ojson rows = ojson::array();
  for (long k = 0; k < d.size; ++k) {
    ojson row = ojson::array();
    for (int i = 0; i < d.dim; ++i) row.push_back(d.states[static_cast<std::size_t>(k) * d.dim + i]);
    rows.push_back(std::move(row));
  }
  j[label] = std::move(rows);
  write_json(out, j);
}

/// Shared tail for trajectory tasks: write the artifact, then report a
/// domain exit as a numerical failure with the partial artifact kept.
int finish_trajectory(const OutputSpec& out, const Provenance& prov, const TrajectoryData& d,
                      const std::string& label) {
  emit_trajectory(out, prov, d, label);
  if (d.status == SLB_TRAJECTORY_COMPLETE) return 0;
  std::string msg = "trajectory left the spray domain at t=" +
                    format_double(d.times.empty() ? 0.0 : d.times.back(), 17) +
                    "; artifact covers the reached span";
  emit_status(out, prov, "domain-exit", msg, true);
  std::fprintf(stderr, "error: domain-exit: %s\n", msg.c_str());
  return 3;
}

/* ---- task runners ------------------------------------------------------- */

struct TaskContext {
  const ojson& task;
  const slb_algebra* algebra;
  const slb_spray* spray;
  slb_integrator_config integ;
  OutputSpec out;
  Provenance prov;
  int dim;
};

int run_geodesic(TaskContext& c) {
  check_keys(c.task, "task", {"type", "y0", "t_span"});
  std::vector<double> y0 = get_vector(c.task, "y0", c.dim);
  auto [t0, t1] = get_span(c.task);
  slb_trajectory* raw = nullptr;
  check(slb_geodesic_flow(c.spray, y0.data(), t0, t1, &c.integ, &raw), "task.geodesic");
  TrajectoryPtr tr(raw);
  return finish_trajectory(c.out, c.prov, fetch(tr.get(), "task.geodesic"), "y");
}

int run_transport_linear(TaskContext& c) {
  check_keys(c.task, "task", {"type", "y0", "w0", "t_span"});
  std::vector<double> y0 = get_vector(c.task, "y0", c.dim);
  std::vector<double> w0 = get_vector(c.task, "w0", c.dim);
  auto [t0, t1] = get_span(c.task);
  slb_trajectory* graw = nullptr;
  check(slb_geodesic_flow(c.spray, y0.data(), t0, t1, &c.integ, &graw), "task.transport-linear");
  TrajectoryPtr geo(graw);
  slb_trajectory* wraw = nullptr;
  check(slb_linear_transport(c.spray, geo.get(), w0.data(), &c.integ, &wraw),
        "task.transport-linear");
  TrajectoryPtr tr(wraw);
  TrajectoryData d = fetch(tr.get(), "task.transport-linear");
  if (slb_trajectory_status(geo.get()) != SLB_TRAJECTORY_COMPLETE)
    d.status = SLB_TRAJECTORY_DOMAIN_EXIT;
  return finish_trajectory(c.out, c.prov, d, "w");
}

int run_transport_nonlinear(TaskContext& c) {
  check_keys(c.task, "task", {"type", "y0", "w", "t_span"});
  std::vector<double> y0 = get_vector(c.task, "y0", c.dim);
  CurvePtr w = build_curve(require(c.task, "w", "task"), "task.w", c.dim);
  auto [t0, t1] = get_span(c.task);
  slb_trajectory* raw = nullptr;
  check(slb_nonlinear_transport(c.spray, w.get(), y0.data(), t0, t1, &c.integ, &raw),
        "task.transport-nonlinear");
  TrajectoryPtr tr(raw);
  return finish_trajectory(c.out, c.prov, fetch(tr.get(), "task.transport-nonlinear"), "y");
}

int run_one_param_flow(TaskContext& c) {
  check_keys(c.task, "task", {"type", "y0", "w", "t"});
  std::vector<double> y0 = get_vector(c.task, "y0", c.dim);
  std::vector<double> w = get_vector(c.task, "w", c.dim);
  double t = as_number(require(c.task, "t", "task"), "task.t");
  std::vector<double> y(static_cast<std::size_t>(c.dim));
  check(slb_one_param_flow(c.spray, w.data(), t, y0.data(), &c.integ, y.data()),
        "task.one-param-flow");
  ojson j;
  j["provenance"] = provenance_json(c.prov);
  j["t"] = t;
  j["y0"] = y0;
  j["w"] = w;
  j["y"] = y;
  write_json(c.out, j);
  return 0;
}

int run_curvature(TaskContext& c) {
  check_keys(c.task, "task", {"type", "y", "w", "route", "t_probe"});
  std::vector<double> y = get_vector(c.task, "y", c.dim);
  std::vector<double> w = get_vector(c.task, "w", c.dim);
  std::string route = c.task.contains("route")
                          ? as_string(c.task["route"], "task.route")
                          : "algebraic";
  if (route != "algebraic" && route != "transport" && route != "both")
    fail_config("task.route", "expected algebraic|transport|both");
  double t_probe = c.task.contains("t_probe")
                       ? as_number(c.task["t_probe"], "task.t_probe")
                       : 0.0;
  ojson j;
  j["provenance"] = provenance_json(c.prov);
  j["y"] = y;
  j["w"] = w;
  std::vector<double> alg(static_cast<std::size_t>(c.dim));
  std::vector<double> tra(static_cast<std::size_t>(c.dim));
  if (route != "transport") {
    // The transport route reads R off at t_probe along the geodesic, so for
    // a like-for-like comparison the algebraic operator is evaluated at the
    // transported flag (y(t_probe), w(t_probe)); at t_probe = 0 that is the
    // input flag itself.
    std::vector<double> ya = y, wa = w;
    if (route == "both" && t_probe != 0.0) {
      slb_trajectory* geo_raw = nullptr;
      check(slb_geodesic_flow(c.spray, y.data(), 0.0, t_probe, &c.integ, &geo_raw),
            "task.curvature");
      TrajectoryPtr geo(geo_raw);
      if (slb_trajectory_status(geo.get()) != SLB_TRAJECTORY_COMPLETE)
        throw CliError{3, "domain-exit", "geodesic left the spray domain before t_probe"};
      slb_trajectory* par_raw = nullptr;
      check(slb_linear_transport(c.spray, geo.get(), w.data(), &c.integ, &par_raw),
            "task.curvature");
      TrajectoryPtr par(par_raw);
      if (slb_trajectory_status(par.get()) != SLB_TRAJECTORY_COMPLETE)
        throw CliError{3, "domain-exit", "transport left the spray domain before t_probe"};
      check(slb_trajectory_eval(geo.get(), t_probe, ya.data()), "task.curvature");
      check(slb_trajectory_eval(par.get(), t_probe, wa.data()), "task.curvature");
      j["y_probe"] = ya;
      j["w_probe"] = wa;
    }
    check(slb_riemann(c.spray, ya.data(), wa.data(), alg.data()), "task.curvature");
    j["riemann"] = alg;
  }
  if (route != "algebraic") {
    check(slb_riemann_via_transport(c.spray, y.data(), w.data(), t_probe, &c.integ, tra.data()),
          "task.curvature");
    j["riemann_transport"] = tra;
    j["t_probe"] = t_probe;
  }
  if (route == "both") {
    double diff = 0.0;
    for (int i = 0; i < c.dim; ++i)
      diff = std::max(diff, std::fabs(alg[static_cast<std::size_t>(i)] -
                                      tra[static_cast<std::size_t>(i)]));
    j["max_difference"] = diff;
  }
  write_json(c.out, j);
  return 0;
}

int run_flag(TaskContext& c) {
  check_keys(c.task, "task", {"type", "y", "w"});
  std::vector<double> y = get_vector(c.task, "y", c.dim);
  std::vector<double> w = get_vector(c.task, "w", c.dim);
  double k = 0.0;
  check(slb_flag_curvature(c.spray, y.data(), w.data(), &k), "task.flag");
  ojson j;
  j["provenance"] = provenance_json(c.prov);
  j["y"] = y;
  j["w"] = w;
  j["flag_curvature"] = k;
  write_json(c.out, j);
  return 0;
}

int run_s_curvature(TaskContext& c) {
  check_keys(c.task, "task", {"type", "y"});
  std::vector<double> y = get_vector(c.task, "y", c.dim);
  double s = 0.0;
  check(slb_s_curvature(c.spray, y.data(), &s), "task.s-curvature");
  ojson j;
  j["provenance"] = provenance_json(c.prov);
  j["y"] = y;
  j["s_curvature"] = s;
  write_json(c.out, j);
  return 0;
}

int run_landsberg(TaskContext& c) {
  check_keys(c.task, "task", {"type", "y", "w", "route"});
  std::vector<double> y = get_vector(c.task, "y", c.dim);
  std::vector<double> w = get_vector(c.task, "w", c.dim);
  std::string route = c.task.contains("route")
                          ? as_string(c.task["route"], "task.route")
                          : "algebraic";
  if (route != "algebraic" && route != "transport" && route != "both")
    fail_config("task.route", "expected algebraic|transport|both");
  ojson j;
  j["provenance"] = provenance_json(c.prov);
  j["y"] = y;
  j["w"] = w;
  double alg = 0.0, tra = 0.0;
  if (route != "transport") {
    check(slb_landsberg(c.spray, y.data(), w.data(), &alg), "task.landsberg");
    j["landsberg"] = alg;
  }
  if (route != "algebraic") {
    check(slb_landsberg_via_transport(c.spray, y.data(), w.data(), &c.integ, &tra),
          "task.landsberg");
    j["landsberg_transport"] = tra;
  }
  if (route == "both") j["difference"] = std::fabs(alg - tra);
  write_json(c.out, j);
  return 0;
}

int run_holonomy_dim(TaskContext& c) {
  check_keys(c.task, "task", {"type", "max_depth", "samples", "svd_tol"});
  int max_depth = c.task.contains("max_depth")
                      ? as_int(c.task["max_depth"], "task.max_depth")
                      : 3;
  if (max_depth < 1 || max_depth > 5) fail_config("task.max_depth", "must be in 1..5");
  int samples = c.task.contains("samples") ? as_int(c.task["samples"], "task.samples") : 40;
  if (samples < 1 || samples > 100000) fail_config("task.samples", "must be in 1..100000");
  double svd_tol = c.task.contains("svd_tol")
                       ? as_number(c.task["svd_tol"], "task.svd_tol")
                       : 1e-8;
  std::vector<slb_dim_result> results(static_cast<std::size_t>(max_depth));
  // Per depth the SVD yields at most min(words, dim*samples) values; 2048
  // covers the word cap enforced by the library.
  std::vector<double> svs(static_cast<std::size_t>(max_depth) *
                          std::min(2048, c.dim * samples + 1));
  int sv_used = 0;
  check(slb_dim_estimate(c.spray, max_depth, samples, svd_tol, c.prov.seed, results.data(),
                         svs.data(), static_cast<int>(svs.size()), &sv_used),
        "task.holonomy-dim");
  ojson j;
  j["provenance"] = provenance_json(c.prov);
  j["svd_tol"] = svd_tol;
  ojson est = ojson::array();
  for (const slb_dim_result& r : results) {
    ojson e;
    e["depth"] = r.depth;
    e["words"] = r.words;
    e["samples"] = r.samples;
    e["rank"] = r.rank;
    e["singular_values"] =
        std::vector<double>(svs.begin() + r.sv_offset, svs.begin() + r.sv_offset + r.sv_count);
    est.push_back(std::move(e));
  }
  j["estimates"] = std::move(est);
  write_json(c.out, j);
  return 0;
}

int run_loop_defect(TaskContext& c) {
  check_keys(c.task, "task", {"type", "y0", "w1", "w2", "scales"});
  std::vector<double> y0 = get_vector(c.task, "y0", c.dim);
  std::vector<double> w1 = get_vector(c.task, "w1", c.dim);
  std::vector<double> w2 = get_vector(c.task, "w2", c.dim);
  const ojson& snode = require(c.task, "scales", "task");
  if (!snode.is_array() || snode.empty())
    fail_config("task.scales", "expected a nonempty array of positive scales");
  std::vector<double> scales;
  for (std::size_t i = 0; i < snode.size(); ++i) {
    double s = as_number(snode[i], "task.scales." + std::to_string(i));
    if (!(s > 0)) fail_config("task.scales." + std::to_string(i), "must be positive");
    scales.push_back(s);
  }
  std::vector<double> norms(scales.size());
  double slope = 0.0;
  check(slb_loop_defect_slope(c.spray, w1.data(), w2.data(), scales.data(),
                              static_cast<int>(scales.size()), y0.data(), &c.integ, norms.data(),
                              &slope),
        "task.loop-defect");
  ojson j;
  j["provenance"] = provenance_json(c.prov);
  j["y0"] = y0;
  j["w1"] = w1;
  j["w2"] = w2;
  j["scales"] = scales;
  j["defect_norms"] = norms;
  if (std::isfinite(slope))
    j["slope"] = slope;
  else
    j["slope"] = nullptr;
  write_json(c.out, j);
  return 0;
}

RepPtr build_rep(const ojson& task, const slb_algebra* g, int dim) {
  slb_rep* raw = nullptr;
  if (task.contains("rep")) {
    const ojson& r = task["rep"];
    check_keys(r, "task.rep", {"size", "generators"});
    int m = as_int(require(r, "size", "task.rep"), "task.rep.size");
    if (m < 1 || m > 16) fail_config("task.rep.size", "must be in 1..16");
    const ojson& gens = require(r, "generators", "task.rep");
    if (!gens.is_array() || static_cast<int>(gens.size()) != dim)
      fail_config("task.rep.generators", "expected " + std::to_string(dim) + " matrices");
    std::vector<double> flat;
    for (int i = 0; i < dim; ++i) {
      std::vector<double> mat = as_matrix(gens[static_cast<std::size_t>(i)],
                                          "task.rep.generators." + std::to_string(i), m);
      flat.insert(flat.end(), mat.begin(), mat.end());
    }
    check(slb_rep_create(g, m, flat.data(), &raw), "task.rep");
  } else {
    check(slb_rep_catalog(g, &raw), "task.rep");
  }
  return RepPtr(raw);
}

int run_reconstruct(TaskContext& c) {
  check_keys(c.task, "task", {"type", "y0", "t_span", "c0", "rep"});
  std::vector<double> y0 = get_vector(c.task, "y0", c.dim);
  auto [t0, t1] = get_span(c.task);
  RepPtr rep = build_rep(c.task, c.algebra, c.dim);
  int m = slb_rep_matrix_size(rep.get());
  std::vector<double> c0;
  if (c.task.contains("c0")) c0 = as_matrix(c.task["c0"], "task.c0", m);

  slb_trajectory* graw = nullptr;
  check(slb_geodesic_flow(c.spray, y0.data(), t0, t1, &c.integ, &graw), "task.reconstruct");
  TrajectoryPtr geo(graw);
  long count = 0;
  check(slb_reconstruct_curve(rep.get(), geo.get(), &c.integ, nullptr, nullptr, nullptr, 0,
                              &count),
        "task.reconstruct");
  std::vector<double> times(static_cast<std::size_t>(count));
  std::vector<double> mats(static_cast<std::size_t>(count) * m * m);
  check(slb_reconstruct_curve(rep.get(), geo.get(), &c.integ, c0.empty() ? nullptr : c0.data(),
                              times.data(), mats.data(), count, &count),
        "task.reconstruct");

  bool partial = slb_trajectory_status(geo.get()) != SLB_TRAJECTORY_COMPLETE;
  if (c.out.format == "csv") {
    std::ostringstream os;
    os << provenance_comment(c.prov);
    os << "t";
    for (int r = 1; r <= m; ++r)
      for (int col = 1; col <= m; ++col) os << ",C" << r << col;
    os << "\n";
    for (long k = 0; k < count; ++k) {
      os << format_double(times[static_cast<std::size_t>(k)], c.out.precision);
      for (int e = 0; e < m * m; ++e)
        os << ","
           << format_double(mats[static_cast<std::size_t>(k) * m * m + e], c.out.precision);
      os << "\n";
    }
    write_text(c.out, os.str());
  } else {
    ojson j;
    j["provenance"] = provenance_json(c.prov);
    j["status"] = partial ? "domain-exit" : "complete";
    j["matrix_size"] = m;
    j["t"] = times;
    ojson all = ojson::array();
    for (long k = 0; k < count; ++k) {
      ojson mat = ojson::array();
      for (int r = 0; r < m; ++r) {
        ojson row = ojson::array();
        for (int col = 0; col < m; ++col)
          row.push_back(mats[static_cast<std::size_t>(k) * m * m + r * m + col]);
        mat.push_back(std::move(row));
      }
      all.push_back(std::move(mat));
    }
    j["matrices"] = std::move(all);
    write_json(c.out, j);
  }
  if (!partial) return 0;
  std::string msg = "geodesic left the spray domain; artifact covers the reached span";
  emit_status(c.out, c.prov, "domain-exit", msg, true);
  std::fprintf(stderr, "error: domain-exit: %s\n", msg.c_str());
  return 3;
}

int run_verify_report(const slb_spray* spray, const slb_integrator_config& integ,
                      const OutputSpec& out, const Provenance& prov) {
  int count = 0;
  int all_passed = 0;
  std::vector<slb_check> checks(32);
  check(slb_verify(spray, &integ, prov.seed, checks.data(), static_cast<int>(checks.size()),
                   &count, &all_passed),
        "verify");
  ojson j;
  j["provenance"] = provenance_json(prov);
  j["all_passed"] = (all_passed != 0);
  ojson suites = ojson::array();
  for (int i = 0; i < count && i < static_cast<int>(checks.size()); ++i) {
    const slb_check& ck = checks[static_cast<std::size_t>(i)];
    ojson s;
    s["name"] = ck.name;
    s["checks"] = ck.checks;
    s["max_residual"] = ck.max_residual;
    s["tolerance"] = ck.tolerance;
    s["status"] = ck.passed ? "pass" : "fail";
    if (ck.note[0] != '\0') s["note"] = ck.note;
    suites.push_back(std::move(s));
  }
  j["suites"] = std::move(suites);
  write_json(out, j);
  if (all_passed) return 0;
  std::fprintf(stderr, "error: verify: one or more property suites failed\n");
  return 3;
}

/* ---- subcommands --------------------------------------------------------- */

int dispatch(const ojson& cfg, bool force_verify) {
  check_keys(cfg, "config", {"algebra", "spray", "task", "integrator", "output", "seed"});
  OutputSpec out = build_output(cfg);
  Provenance prov;
  prov.version = slb_version();
  prov.config_hash = hash_hex(fnv1a64(cfg.dump()));
  prov.seed = kDefaultSeed;
  if (cfg.contains("seed")) {
    if (!cfg["seed"].is_number_unsigned())
      fail_config("seed", "expected a non-negative integer");
    prov.seed = cfg["seed"].get<unsigned long long>();
  }

  AlgebraPtr algebra = build_algebra(cfg);
  SprayPtr spray = build_spray(cfg, algebra.get());
  slb_integrator_config integ = build_integrator(cfg);

  std::string type;
  if (force_verify) {
    type = "verify";
  } else {
    const ojson& task = require(cfg, "task", "config");
    if (!task.is_object()) fail_config("task", "expected an object");
    type = as_string(require(task, "type", "task"), "task.type");
  }

  if (type == "verify") {
    // The verify subcommand accepts any run config; a verify *task* block
    // carries nothing beyond its type.
    if (!force_verify) check_keys(cfg["task"], "task", {"type"});
    resolve_format(out, type, false);
    return run_verify_report(spray.get(), integ, out, prov);
  }

  TaskContext c{cfg["task"], algebra.get(), spray.get(), integ,
                out,         prov,          slb_algebra_dim(algebra.get())};
  try {
    if (type == "geodesic") {
      resolve_format(c.out, type, true);
      return run_geodesic(c);
    } else if (type == "transport-linear") {
      resolve_format(c.out, type, true);
      return run_transport_linear(c);
    } else if (type == "transport-nonlinear") {
      resolve_format(c.out, type, true);
      return run_transport_nonlinear(c);
    } else if (type == "reconstruct") {
      resolve_format(c.out, type, true);
      return run_reconstruct(c);
    } else if (type == "one-param-flow") {
      resolve_format(c.out, type, false);
      return run_one_param_flow(c);
    } else if (type == "curvature") {
      resolve_format(c.out, type, false);
      return run_curvature(c);
    } else if (type == "flag") {
      resolve_format(c.out, type, false);
      return run_flag(c);
    } else if (type == "s-curvature") {
      resolve_format(c.out, type, false);
      return run_s_curvature(c);
    } else if (type == "landsberg") {
      resolve_format(c.out, type, false);
      return run_landsberg(c);
    } else if (type == "holonomy-dim") {
      resolve_format(c.out, type, false);
      return run_holonomy_dim(c);
    } else if (type == "loop-defect") {
      resolve_format(c.out, type, false);
      return run_loop_defect(c);
    }
    fail_config("task.type",
                "unknown task '" + type +
                    "' (expected geodesic|transport-linear|transport-nonlinear|one-param-flow|"
                    "curvature|flag|s-curvature|landsberg|holonomy-dim|loop-defect|reconstruct|"
                    "verify)");
  } catch (const CliError& e) {
    if (e.exit_code != 3) throw;
    emit_status(out, prov, e.kind, e.message, false);
    std::fprintf(stderr, "error: %s: %s\n", e.kind.c_str(), e.message.c_str());
    return 3;
  }
}

int do_catalog() {
  char names[1024];
  check(slb_algebra_catalog_names(names, sizeof names), "catalog");
  ojson algebras = ojson::array();
  std::istringstream in(names);
  std::string name;
  while (std::getline(in, name)) {
    ojson e;
    e["name"] = name;
    slb_algebra* graw = nullptr;
    slb_status st = slb_algebra_catalog(name.c_str(), &graw);
    if (st == SLB_ERR_LOOKUP) {
      // Parameterized family (e.g. abelian_n); the pattern itself is listed.
      e["family"] = true;
      algebras.push_back(std::move(e));
      continue;
    }
    check(st, "catalog");
    AlgebraPtr g(graw);
    e["dimension"] = slb_algebra_dim(g.get());
    slb_rep* rraw = nullptr;
    if (slb_rep_catalog(g.get(), &rraw) == SLB_OK) {
      RepPtr rep(rraw);
      e["rep"] = true;
      e["rep_size"] = slb_rep_matrix_size(rep.get());
    } else {
      e["rep"] = false;
    }
    algebras.push_back(std::move(e));
  }
  ojson j;
  j["tool"] = "spraylab";
  j["version"] = slb_version();
  j["algebras"] = std::move(algebras);
  std::string text = j.dump(2) + "\n";
  std::fwrite(text.data(), 1, text.size(), stdout);
  return 0;
}

}  // namespace
}  // namespace cli

int main(int argc, char** argv) {
  CLI::App app{"left-invariant spray geometry on Lie groups"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;

  CLI::App* run = app.add_subcommand("run", "execute the task described by a config file");
  run->add_option("config", config_path, "JSON run config")->required();
  run->add_option("--set", overrides, "override a config leaf: dotted.path=value");

  CLI::App* verify =
      app.add_subcommand("verify", "run the property suites for the configured spray");
  verify->add_option("config", config_path, "JSON run config")->required();
  verify->add_option("--set", overrides, "override a config leaf: dotted.path=value");

  app.add_subcommand("catalog", "list the built-in algebras and presentations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand("catalog")) return cli::do_catalog();
    cli::ojson cfg = cli::load_config(config_path, overrides);
    return cli::dispatch(cfg, app.got_subcommand("verify"));
  } catch (const cli::CliError& e) {
    std::fprintf(stderr, "error: %s: %s\n", e.kind.c_str(), e.message.c_str());
    return e.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return 3;
  }
}
