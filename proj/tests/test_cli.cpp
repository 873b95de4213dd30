// End-to-end checks for the spraylab command-line tool.  Each test writes a
// config into a scratch directory, invokes the real binary, and inspects the
// exit code plus whatever artifacts the run produced.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

#ifndef SPRAYLAB_CLI_BIN
#error "SPRAYLAB_CLI_BIN must point at the built CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("spraylab_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& body) {
  fs::path p = scratch_dir() / name;
  std::ofstream out(p);
  out << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  fs::path cap = scratch_dir() / "stdout.txt";
  std::string cmd = std::string(SPRAYLAB_CLI_BIN) + " " + args + " > " +
                    cap.string() + " 2> " + (scratch_dir() / "stderr.txt").string();
  int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.stdout_text = slurp(cap);
  return r;
}

json run_json(const std::string& args, int expected_exit = 0) {
  RunResult r = run_cli(args);
  REQUIRE(r.exit_code == expected_exit);
  return json::parse(r.stdout_text);
}

const char* kGeodesicConfig = R"({
  "algebra": {"catalog": "su2"},
  "spray": {"type": "riemannian", "metric": [[1,0,0],[0,1,0],[0,0,2]]},
  "task": {"type": "geodesic", "y0": [0.4, 0.1, 0.5], "t_span": [0.0, 1.0]},
  "integrator": {"method": "adaptive", "abs_tol": 1e-10, "rel_tol": 1e-10},
  "output": {"format": "csv"}
})";

}  // namespace

TEST_CASE("catalog listing is machine-readable") {
  json j = run_json("catalog");
  CHECK(j["tool"] == "spraylab");
  REQUIRE(j["algebras"].is_array());
  bool saw_su2 = false, saw_family = false;
  for (const auto& row : j["algebras"]) {
    REQUIRE(row.contains("name"));
    if (row["name"] == "su2") {
      saw_su2 = true;
      CHECK(row["dimension"] == 3);
    }
    if (row.value("family", false)) saw_family = true;
  }
  CHECK(saw_su2);
  CHECK(saw_family);  // abelian_n style entries are parameterised families
}

TEST_CASE("geodesic run emits csv with provenance header") {
  fs::path cfg = write_file("geo.json", kGeodesicConfig);
  RunResult r = run_cli("run " + cfg.string());
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.stdout_text);
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(first.rfind("# spraylab ", 0) == 0);
  CHECK(first.find("config=") != std::string::npos);
  CHECK(first.find("seed=") != std::string::npos);
  CHECK(second == "t,y1,y2,y3");
  // at least a data row, and the first sample sits at t = 0
  std::string row;
  REQUIRE(std::getline(lines, row));
  CHECK(row.rfind("0,", 0) == 0);
}

TEST_CASE("identical configs reproduce byte-identical output") {
  fs::path cfg = write_file("repro.json", kGeodesicConfig);
  RunResult a = run_cli("run " + cfg.string());
  RunResult b = run_cli("run " + cfg.string());
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  REQUIRE(!a.stdout_text.empty());
  CHECK(a.stdout_text == b.stdout_text);
}

TEST_CASE("--set overrides a config leaf") {
  fs::path cfg = write_file("override.json", kGeodesicConfig);
  RunResult base = run_cli("run " + cfg.string());
  RunResult longer = run_cli("run " + cfg.string() + " --set task.t_span.1=2.0");
  REQUIRE(base.exit_code == 0);
  REQUIRE(longer.exit_code == 0);
  auto last_time = [](const std::string& text) {
    std::istringstream lines(text);
    std::string line, last;
    while (std::getline(lines, line))
      if (!line.empty() && line[0] != '#' && line[0] != 't') last = line;
    return std::stod(last.substr(0, last.find(',')));
  };
  CHECK(last_time(base.stdout_text) == doctest::Approx(1.0));
  CHECK(last_time(longer.stdout_text) == doctest::Approx(2.0));
}

TEST_CASE("unknown config fields are rejected") {
  std::string body = R"({
    "algebra": {"catalog": "su2"},
    "spray": {"type": "zero"},
    "task": {"type": "geodesic", "y0": [1,0,0], "t_span": [0,1]},
    "output": {"format": "csv"},
    "unexpected": 1
  })";
  fs::path cfg = write_file("unknown_field.json", body);
  CHECK(run_cli("run " + cfg.string()).exit_code == 2);
}

TEST_CASE("missing config file is a usage error") {
  CHECK(run_cli("run " + (scratch_dir() / "does_not_exist.json").string()).exit_code == 2);
}

TEST_CASE("domain exit produces partial artifact and status sidecar") {
  // Quadratic spray with a floor on |y|: the geodesic decays until it crosses
  // the floor, at which point the run stops early with a numerical failure.
  std::string body = R"({
    "algebra": {"catalog": "abelian_3"},
    "spray": {
      "type": "quadratic",
      "coeffs": [{"i": 1, "j": 1, "k": 1, "value": 1.0}],
      "y_floor": 0.9
    },
    "task": {"type": "geodesic", "y0": [1.0, 0.0, 0.0], "t_span": [0.0, 5.0]},
    "output": {"format": "csv"}
  })";
  fs::path cfg = write_file("domain_exit.json", body);
  fs::path out = scratch_dir() / "partial.csv";
  RunResult r = run_cli("run " + cfg.string() + " --set output.path=" + out.string());
  CHECK(r.exit_code == 3);

  // Partial trajectory still lands on disk.
  std::string csv = slurp(out);
  REQUIRE(!csv.empty());
  CHECK(csv.rfind("# spraylab ", 0) == 0);

  // Sidecar explains what happened.
  json status = json::parse(slurp(out.string() + ".status.json"));
  CHECK(status["status"] == "numerical-failure");
  CHECK(status["kind"] == "domain-exit");
  CHECK(status["exit_code"] == 3);
  CHECK(status["partial_artifact"] == true);
}

TEST_CASE("curvature task reports both routes and their difference") {
  std::string body = R"({
    "algebra": {"catalog": "su2"},
    "spray": {"type": "riemannian", "metric": [[1,0,0],[0,1,0],[0,0,2]]},
    "task": {"type": "curvature", "y": [0.3, -0.2, 0.8], "w": [1.0, 0.4, -0.1],
             "route": "both", "t_probe": 0.4},
    "output": {"format": "json"}
  })";
  fs::path cfg = write_file("curvature.json", body);
  json j = run_json("run " + cfg.string());
  REQUIRE(j.contains("riemann"));
  REQUIRE(j.contains("riemann_transport"));
  REQUIRE(j.contains("max_difference"));
  CHECK(j["max_difference"].get<double>() < 1e-4);
}

TEST_CASE("verify subcommand cross-checks a run config") {
  // verify reuses a run config's algebra/spray/integrator but emits its own
  // JSON report, so the config must not force csv output.
  std::string body = R"({
    "algebra": {"catalog": "su2"},
    "spray": {"type": "riemannian", "metric": [[1,0,0],[0,1,0],[0,0,2]]},
    "task": {"type": "geodesic", "y0": [0.4, 0.1, 0.5], "t_span": [0.0, 1.0]},
    "integrator": {"method": "adaptive", "abs_tol": 1e-10, "rel_tol": 1e-10}
  })";
  fs::path cfg = write_file("verify_geo.json", body);
  json report = run_json("verify " + cfg.string());
  REQUIRE(report.contains("all_passed"));
  CHECK(report["all_passed"] == true);
  REQUIRE(report["suites"].is_array());
  REQUIRE(!report["suites"].empty());
  for (const auto& suite : report["suites"]) {
    CHECK(suite.contains("name"));
    CHECK(suite["status"] == "pass");
  }
}

TEST_CASE("loop-defect task reports defect norms and slope") {
  std::string body = R"({
    "algebra": {"catalog": "su2"},
    "spray": {"type": "zero"},
    "task": {"type": "loop-defect", "y0": [1.0, 0.0, 0.0],
             "w1": [1.0, 0.0, 0.0], "w2": [0.0, 1.0, 0.0],
             "scales": [0.2, 0.1, 0.05, 0.025]},
    "output": {"format": "json"}
  })";
  fs::path cfg = write_file("loop.json", body);
  json j = run_json("run " + cfg.string());
  REQUIRE(j["defect_norms"].is_array());
  REQUIRE(j["defect_norms"].size() == 4);
  REQUIRE(j.contains("slope"));
  CHECK(j["slope"].get<double>() == doctest::Approx(2.0).epsilon(0.05));
}
