#include "config.hpp"

#include <fstream>

namespace cli {

namespace {

// Split "task.t_span.1" into segments; numeric segments address array
// elements (0-based), everything else addresses object keys.
std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path) {
    if (c == '.') {
      if (cur.empty()) fail_config("--set " + path, "empty path segment");
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (cur.empty()) fail_config("--set " + path, "empty path segment");
  parts.push_back(cur);
  return parts;
}

bool is_index(const std::string& s, std::size_t& out) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  out = static_cast<std::size_t>(std::stoul(s));
  return true;
}

void apply_override(ojson& root, const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0)
    fail_config("--set " + spec, "expected dotted.path=value");
  std::string path = spec.substr(0, eq);
  std::string raw = spec.substr(eq + 1);
  ojson value;
  try {
    value = ojson::parse(raw);
  } catch (const ojson::parse_error&) {
    value = raw;  // unquoted strings are a convenience
  }

  ojson* node = &root;
  std::vector<std::string> parts = split_path(path);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    std::size_t idx;
    if (is_index(parts[i], idx) && node->is_array()) {
      if (idx >= node->size())
        fail_config("--set " + spec, "array index " + parts[i] + " out of range");
      node = &(*node)[idx];
    } else if (node->is_object() || node->is_null()) {
      node = &(*node)[parts[i]];
    } else {
      fail_config("--set " + spec, "segment '" + parts[i] + "' does not address an object");
    }
  }
  const std::string& leaf = parts.back();
  std::size_t idx;
  if (is_index(leaf, idx) && node->is_array()) {
    if (idx > node->size())
      fail_config("--set " + spec, "array index " + leaf + " out of range");
    if (idx == node->size())
      node->push_back(value);
    else
      (*node)[idx] = value;
  } else if (node->is_object() || node->is_null()) {
    (*node)[leaf] = value;
  } else {
    fail_config("--set " + spec, "segment '" + leaf + "' does not address an object");
  }
}

}  // namespace

const ojson& require(const ojson& node, const std::string& field, const std::string& path) {
  auto it = node.find(field);
  if (it == node.end()) fail_config(path, "missing required field '" + field + "'");
  return *it;
}

double as_number(const ojson& node, const std::string& path) {
  if (!node.is_number()) fail_config(path, "expected a number");
  return node.get<double>();
}

int as_int(const ojson& node, const std::string& path) {
  if (!node.is_number_integer()) fail_config(path, "expected an integer");
  return node.get<int>();
}

std::string as_string(const ojson& node, const std::string& path) {
  if (!node.is_string()) fail_config(path, "expected a string");
  return node.get<std::string>();
}

std::vector<double> as_vector(const ojson& node, const std::string& path, int dim) {
  if (!node.is_array())
    fail_config(path, "expected an array of " + std::to_string(dim) + " numbers");
  if (static_cast<int>(node.size()) != dim)
    fail_config(path, "expected " + std::to_string(dim) + " entries, got " +
                          std::to_string(node.size()));
  std::vector<double> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i)
    out.push_back(as_number(node[i], path + "." + std::to_string(i)));
  return out;
}

std::vector<double> as_matrix(const ojson& node, const std::string& path, int dim) {
  if (!node.is_array() || static_cast<int>(node.size()) != dim)
    fail_config(path, "expected " + std::to_string(dim) + " rows");
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(dim) * dim);
  for (int r = 0; r < dim; ++r) {
    std::vector<double> row =
        as_vector(node[static_cast<std::size_t>(r)], path + "." + std::to_string(r), dim);
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

ojson load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) fail_config(path, "cannot open config file");
  ojson cfg;
  try {
    cfg = ojson::parse(in);
  } catch (const ojson::parse_error& e) {
    fail_config(path, std::string("invalid JSON: ") + e.what());
  }
  if (!cfg.is_object()) fail_config(path, "top level must be a JSON object");
  for (const std::string& spec : overrides) apply_override(cfg, spec);
  return cfg;
}

std::vector<double> get_vector(const ojson& node, const std::string& field, int dim) {
  return as_vector(require(node, field, "task"), "task." + field, dim);
}

AlgebraPtr build_algebra(const ojson& cfg) {
  const ojson& a = require(cfg, "algebra", "config");
  slb_algebra* raw = nullptr;
  if (a.contains("catalog")) {
    std::string name = as_string(a["catalog"], "algebra.catalog");
    check(slb_algebra_catalog(name.c_str(), &raw), "algebra.catalog");
    return AlgebraPtr(raw);
  }
  int dim = as_int(require(a, "dimension", "algebra"), "algebra.dimension");
  if (dim < 1 || dim > 16) fail_config("algebra.dimension", "must be in 1..16");
  std::vector<double> c(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  std::vector<bool> seen(static_cast<std::size_t>(dim) * dim, false);
  const ojson& brackets = require(a, "brackets", "algebra");
  if (!brackets.is_array()) fail_config("algebra.brackets", "expected an array");
  for (std::size_t bidx = 0; bidx < brackets.size(); ++bidx) {
    const std::string path = "algebra.brackets." + std::to_string(bidx);
    const ojson& b = brackets[bidx];
    int i = as_int(require(b, "i", path), path + ".i");
    int j = as_int(require(b, "j", path), path + ".j");
    if (i < 1 || i > dim || j < 1 || j > dim)
      fail_config(path, "indices must be in 1.." + std::to_string(dim));
    if (i == j) fail_config(path, "bracket of a basis element with itself is zero");
    std::size_t pair = static_cast<std::size_t>(i - 1) * dim + (j - 1);
    std::size_t rpair = static_cast<std::size_t>(j - 1) * dim + (i - 1);
    if (seen[pair] || seen[rpair])
      fail_config(path, "pair (" + std::to_string(i) + "," + std::to_string(j) +
                            ") already defined");
    seen[pair] = seen[rpair] = true;
    const ojson& coeffs = require(b, "coeffs", path);
    if (!coeffs.is_object()) fail_config(path + ".coeffs", "expected an object {\"k\": value}");
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
      int k;
      try {
        k = std::stoi(it.key());
      } catch (...) {
        fail_config(path + ".coeffs", "key '" + it.key() + "' is not a basis index");
        return nullptr;  // unreachable
      }
      if (k < 1 || k > dim)
        fail_config(path + ".coeffs." + it.key(), "index must be in 1.." + std::to_string(dim));
      double v = as_number(it.value(), path + ".coeffs." + it.key());
      // Write both orientations so the stored array is antisymmetric.
      c[(static_cast<std::size_t>(i - 1) * dim + (j - 1)) * dim + (k - 1)] = v;
      c[(static_cast<std::size_t>(j - 1) * dim + (i - 1)) * dim + (k - 1)] = -v;
    }
  }
  double jtol = a.contains("jacobi_tol") ? as_number(a["jacobi_tol"], "algebra.jacobi_tol") : 0.0;
  check(slb_algebra_create(dim, c.data(), jtol, &raw), "algebra");
  return AlgebraPtr(raw);
}

SprayPtr build_spray(const ojson& cfg, const slb_algebra* g) {
  const ojson& s = require(cfg, "spray", "config");
  const int dim = slb_algebra_dim(g);
  std::string type = as_string(require(s, "type", "spray"), "spray.type");
  slb_spray* raw = nullptr;
  if (type == "zero") {
    check(slb_spray_zero(g, &raw), "spray");
  } else if (type == "riemannian") {
    std::vector<double> q = as_matrix(require(s, "metric", "spray"), "spray.metric", dim);
    check(slb_spray_riemannian(g, q.data(), &raw), "spray");
  } else if (type == "randers") {
    std::vector<double> q = as_matrix(require(s, "metric", "spray"), "spray.metric", dim);
    std::vector<double> b = as_vector(require(s, "beta", "spray"), "spray.beta", dim);
    check(slb_spray_randers(g, q.data(), b.data(), &raw), "spray");
  } else if (type == "quadratic") {
    const ojson& coeffs = require(s, "coeffs", "spray");
    if (!coeffs.is_array()) fail_config("spray.coeffs", "expected an array of {i,j,k,value}");
    std::vector<double> t(static_cast<std::size_t>(dim) * dim * dim, 0.0);
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
      const std::string path = "spray.coeffs." + std::to_string(e);
      const ojson& entry = coeffs[e];
      int i = as_int(require(entry, "i", path), path + ".i");
      int j = as_int(require(entry, "j", path), path + ".j");
      int k = as_int(require(entry, "k", path), path + ".k");
      if (i < 1 || i > dim || j < 1 || j > dim || k < 1 || k > dim)
        fail_config(path, "indices must be in 1.." + std::to_string(dim));
      t[(static_cast<std::size_t>(i - 1) * dim + (j - 1)) * dim + (k - 1)] =
          as_number(require(entry, "value", path), path + ".value");
    }
    check(slb_spray_quadratic(g, t.data(), &raw), "spray");
  } else if (type == "custom") {
    const ojson& poly = require(s, "polynomial", "spray");
    if (!poly.is_array() || poly.empty())
      fail_config("spray.polynomial", "expected a nonempty array of monomials");
    auto unpack = [&](const ojson& terms, const std::string& path, bool with_target,
                      std::vector<int>& exps, std::vector<int>& targets,
                      std::vector<double>& coeffs) {
      for (std::size_t e = 0; e < terms.size(); ++e) {
        const std::string tpath = path + "." + std::to_string(e);
        const ojson& term = terms[e];
        const ojson& ex = require(term, "exponents", tpath);
        if (!ex.is_array() || static_cast<int>(ex.size()) != dim)
          fail_config(tpath + ".exponents", "expected " + std::to_string(dim) + " integers");
        for (std::size_t q = 0; q < ex.size(); ++q)
          exps.push_back(as_int(ex[q], tpath + ".exponents." + std::to_string(q)));
        if (with_target) {
          int target = as_int(require(term, "target", tpath), tpath + ".target");
          if (target < 1 || target > dim)
            fail_config(tpath + ".target", "must be in 1.." + std::to_string(dim));
          targets.push_back(target - 1);
        }
        coeffs.push_back(as_number(require(term, "coefficient", tpath), tpath + ".coefficient"));
      }
    };
    std::vector<int> nexp, ntar, dexp;
    std::vector<int> unused;
    std::vector<double> ncoef, dcoef;
    unpack(poly, "spray.polynomial", true, nexp, ntar, ncoef);
    if (s.contains("denominator")) {
      const ojson& den = s["denominator"];
      if (!den.is_array() || den.empty())
        fail_config("spray.denominator", "expected a nonempty array of monomials");
      unpack(den, "spray.denominator", false, dexp, unused, dcoef);
    }
    check(slb_spray_custom(g, static_cast<int>(ncoef.size()), nexp.data(), ntar.data(),
                           ncoef.data(), static_cast<int>(dcoef.size()),
                           dexp.empty() ? nullptr : dexp.data(),
                           dcoef.empty() ? nullptr : dcoef.data(), &raw),
          "spray");
  } else {
    fail_config("spray.type",
                "unknown type '" + type +
                    "' (expected zero|riemannian|randers|quadratic|custom)");
  }
  SprayPtr spray(raw);
  if (s.contains("y_floor")) {
    check(slb_spray_set_y_floor(spray.get(), as_number(s["y_floor"], "spray.y_floor")),
          "spray.y_floor");
  }
  if (s.contains("derivative_mode")) {
    std::string mode = as_string(s["derivative_mode"], "spray.derivative_mode");
    if (mode != "dual" && mode != "finite-difference")
      fail_config("spray.derivative_mode", "expected dual|finite-difference");
    check(slb_spray_set_derivative_mode(spray.get(), mode == "dual" ? 0 : 1),
          "spray.derivative_mode");
  }
  return spray;
}

slb_integrator_config build_integrator(const ojson& cfg) {
  slb_integrator_config out;
  slb_integrator_config_default(&out);
  if (!cfg.contains("integrator")) return out;
  const ojson& n = cfg["integrator"];
  if (!n.is_object()) fail_config("integrator", "expected an object");
  if (n.contains("method")) {
    std::string m = as_string(n["method"], "integrator.method");
    if (m == "adaptive")
      out.method = 0;
    else if (m == "rk4")
      out.method = 1;
    else
      fail_config("integrator.method", "expected adaptive|rk4");
  }
  if (n.contains("abs_tol")) out.abs_tol = as_number(n["abs_tol"], "integrator.abs_tol");
  if (n.contains("rel_tol")) out.rel_tol = as_number(n["rel_tol"], "integrator.rel_tol");
  if (n.contains("max_step")) out.max_step = as_number(n["max_step"], "integrator.max_step");
  if (n.contains("fixed_step"))
    out.fixed_step = as_number(n["fixed_step"], "integrator.fixed_step");
  if (n.contains("max_steps"))
    out.max_steps = as_int(n["max_steps"], "integrator.max_steps");
  return out;
}

CurvePtr build_curve(const ojson& node, const std::string& field, int dim) {
  if (!node.is_object()) fail_config(field, "expected a curve object with a 'kind'");
  std::string kind = as_string(require(node, "kind", field), field + ".kind");
  slb_curve* raw = nullptr;
  if (kind == "constant") {
    std::vector<double> w = as_vector(require(node, "value", field), field + ".value", dim);
    check(slb_curve_constant(dim, w.data(), &raw), field);
  } else if (kind == "piecewise") {
    const ojson& values = require(node, "values", field);
    const ojson& durations = require(node, "durations", field);
    if (!values.is_array() || values.empty())
      fail_config(field + ".values", "expected a nonempty array of vectors");
    if (!durations.is_array() || durations.size() != values.size())
      fail_config(field + ".durations", "must match values in length");
    std::vector<double> ws, dts;
    for (std::size_t l = 0; l < values.size(); ++l) {
      std::vector<double> w =
          as_vector(values[l], field + ".values." + std::to_string(l), dim);
      ws.insert(ws.end(), w.begin(), w.end());
      dts.push_back(as_number(durations[l], field + ".durations." + std::to_string(l)));
    }
    check(slb_curve_piecewise(dim, static_cast<int>(dts.size()), ws.data(), dts.data(), &raw),
          field);
  } else if (kind == "sampled") {
    const ojson& times = require(node, "times", field);
    const ojson& values = require(node, "values", field);
    if (!times.is_array() || times.size() < 2)
      fail_config(field + ".times", "expected at least two sample times");
    if (!values.is_array() || values.size() != times.size())
      fail_config(field + ".values", "must match times in length");
    std::vector<double> ts, ws;
    for (std::size_t k = 0; k < times.size(); ++k) {
      ts.push_back(as_number(times[k], field + ".times." + std::to_string(k)));
      std::vector<double> w =
          as_vector(values[k], field + ".values." + std::to_string(k), dim);
      ws.insert(ws.end(), w.begin(), w.end());
    }
    check(slb_curve_sampled(dim, static_cast<int>(ts.size()), ts.data(), ws.data(), &raw), field);
  } else if (kind == "polynomial") {
    const ojson& coeffs = require(node, "coefficients", field);
    if (!coeffs.is_array() || coeffs.empty())
      fail_config(field + ".coefficients", "expected a nonempty array of vectors (degree-major)");
    std::vector<double> flat;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      std::vector<double> c =
          as_vector(coeffs[k], field + ".coefficients." + std::to_string(k), dim);
      flat.insert(flat.end(), c.begin(), c.end());
    }
    check(slb_curve_polynomial(dim, static_cast<int>(coeffs.size()), flat.data(), &raw), field);
  } else {
    fail_config(field + ".kind",
                "unknown kind '" + kind + "' (expected constant|piecewise|sampled|polynomial)");
  }
  return CurvePtr(raw);
}

OutputSpec build_output(const ojson& cfg) {
  OutputSpec out;
  if (!cfg.contains("output")) return out;
  const ojson& n = cfg["output"];
  if (!n.is_object()) fail_config("output", "expected an object");
  if (n.contains("format")) {
    out.format = as_string(n["format"], "output.format");
    if (out.format != "csv" && out.format != "json")
      fail_config("output.format", "expected csv|json");
  }
  if (n.contains("path")) out.path = as_string(n["path"], "output.path");
  if (n.contains("precision")) {
    out.precision = as_int(n["precision"], "output.precision");
    if (out.precision < 3 || out.precision > 17)
      fail_config("output.precision", "must be in 3..17");
  }
  return out;
}

}  // namespace cli
