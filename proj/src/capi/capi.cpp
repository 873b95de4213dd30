#include "spraylab/spraylab.h"

#include <cstring>
#include <string>

#include "core/algebra.hpp"
#include "core/curvature.hpp"
#include "core/group_rep.hpp"
#include "core/holonomy.hpp"
#include "core/integrate.hpp"
#include "core/spray.hpp"
#include "core/transport.hpp"
#include "core/types.hpp"
#include "core/verify.hpp"

#ifndef SPRAYLAB_VERSION_STRING
#define SPRAYLAB_VERSION_STRING "0.0.0"
#endif

using spraylab::IntegratorConfig;
using spraylab::Mat;
using spraylab::Vec;

struct slb_algebra {
  spraylab::LieAlgebra v;
};
struct slb_spray {
  spraylab::SprayField v;
};
struct slb_curve {
  spraylab::CurveSpec v;
};
struct slb_trajectory {
  spraylab::Trajectory v;
};
struct slb_rep {
  spraylab::MatrixRep v;
};

namespace {

thread_local std::string tls_error;

slb_status fail(slb_status st, const std::string& msg) {
  tls_error = msg;
  return st;
}

template <class F>
slb_status guarded(F&& f) {
  try {
    f();
    tls_error.clear();
    return SLB_OK;
  } catch (const spraylab::ValidationError& e) {
    return fail(SLB_ERR_VALIDATION, e.what());
  } catch (const spraylab::DomainError& e) {
    return fail(SLB_ERR_DOMAIN, e.what());
  } catch (const spraylab::RegularityError& e) {
    return fail(SLB_ERR_REGULARITY, e.what());
  } catch (const spraylab::UnsupportedError& e) {
    return fail(SLB_ERR_UNSUPPORTED, e.what());
  } catch (const spraylab::LookupError& e) {
    return fail(SLB_ERR_LOOKUP, e.what());
  } catch (const spraylab::CapacityError& e) {
    return fail(SLB_ERR_CAPACITY, e.what());
  } catch (const spraylab::IntegrationError& e) {
    return fail(SLB_ERR_INTEGRATION, e.what());
  } catch (const std::exception& e) {
    return fail(SLB_ERR_INTERNAL, e.what());
  }
}

slb_status need(bool ok, const char* what) {
  if (ok) return SLB_OK;
  return fail(SLB_ERR_VALIDATION, std::string("null argument: ") + what);
}

Vec to_vec(const double* p, int n) { return Vec(p, p + n); }

Mat to_mat(const double* p, int rows, int cols) {
  Mat m;
  m.rows = rows;
  m.cols = cols;
  m.a.assign(p, p + static_cast<std::size_t>(rows) * cols);
  return m;
}

IntegratorConfig to_cfg(const slb_integrator_config* cfg) {
  IntegratorConfig out;
  if (!cfg) return out;
  if (cfg->method == 1) {
    out.method = spraylab::StepperKind::RK4Fixed;
  } else if (cfg->method == 0) {
    out.method = spraylab::StepperKind::Dopri5;
  } else {
    throw spraylab::ValidationError("integrator method must be 0 (adaptive) or 1 (fixed)");
  }
  out.fixed_step = cfg->fixed_step;
  out.abs_tol = cfg->abs_tol;
  out.rel_tol = cfg->rel_tol;
  out.max_step = cfg->max_step;
  out.max_steps = cfg->max_steps;
  return out;
}

void copy_string(char* dst, std::size_t cap, const std::string& src) {
  std::size_t n = std::min(cap - 1, src.size());
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

template <class F>
slb_status vector_op(const slb_spray* s, const double* y, double* out, F&& f) {
  if (slb_status st = need(s && y && out, "spray/y/out")) return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    Vec r = f(s->v, to_vec(y, n));
    std::copy(r.begin(), r.end(), out);
  });
}

template <class F>
slb_status vector_op2(const slb_spray* s, const double* y, const double* w, double* out, F&& f) {
  if (slb_status st = need(s && y && w && out, "spray/y/w/out")) return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    Vec r = f(s->v, to_vec(y, n), to_vec(w, n));
    std::copy(r.begin(), r.end(), out);
  });
}

std::vector<spraylab::LoopLeg> to_legs(int n_legs, const double* ws, const double* dts, int dim) {
  std::vector<spraylab::LoopLeg> legs(static_cast<std::size_t>(n_legs));
  for (int l = 0; l < n_legs; ++l) {
    legs[l].w = to_vec(ws + static_cast<std::size_t>(l) * dim, dim);
    legs[l].dt = dts[l];
  }
  return legs;
}

}  // namespace

extern "C" {

const char* slb_version(void) { return SPRAYLAB_VERSION_STRING; }

const char* slb_last_error(void) { return tls_error.c_str(); }

void slb_integrator_config_default(slb_integrator_config* cfg) {
  if (!cfg) return;
  IntegratorConfig d;
  cfg->method = 0;
  cfg->fixed_step = d.fixed_step;
  cfg->abs_tol = d.abs_tol;
  cfg->rel_tol = d.rel_tol;
  cfg->max_step = d.max_step;
  cfg->max_steps = d.max_steps;
}

/* ---- algebra ---------------------------------------------------------- */

slb_status slb_algebra_catalog(const char* name, slb_algebra** out) {
  if (slb_status st = need(name && out, "name/out")) return st;
  return guarded([&] { *out = new slb_algebra{spraylab::LieAlgebra::catalog(name)}; });
}

slb_status slb_algebra_create(int dim, const double* structure, double jacobi_tol,
                              slb_algebra** out) {
  if (slb_status st = need(structure && out, "structure/out")) return st;
  return guarded([&] {
    if (dim < 1) throw spraylab::ValidationError("algebra dimension must be positive");
    std::vector<double> c(structure,
                          structure + static_cast<std::size_t>(dim) * dim * dim);
    double tol = jacobi_tol > 0.0 ? jacobi_tol : 1e-8;
    *out = new slb_algebra{spraylab::LieAlgebra::from_structure_constants(dim, c, tol)};
  });
}

void slb_algebra_free(slb_algebra* g) { delete g; }

int slb_algebra_dim(const slb_algebra* g) { return g ? g->v.dim() : 0; }

const char* slb_algebra_name(const slb_algebra* g) { return g ? g->v.name().c_str() : ""; }

slb_status slb_algebra_catalog_names(char* buffer, size_t cap) {
  if (slb_status st = need(buffer && cap > 0, "buffer")) return st;
  return guarded([&] {
    std::string joined;
    for (const std::string& n : spraylab::LieAlgebra::catalog_names()) {
      if (!joined.empty()) joined += '\n';
      joined += n;
    }
    if (joined.size() + 1 > cap)
      throw spraylab::CapacityError("buffer too small for catalog names");
    copy_string(buffer, cap, joined);
  });
}

slb_status slb_algebra_bracket(const slb_algebra* g, const double* x, const double* y,
                               double* out) {
  if (slb_status st = need(g && x && y && out, "algebra/x/y/out")) return st;
  return guarded([&] {
    int n = g->v.dim();
    Vec r = g->v.bracket(to_vec(x, n), to_vec(y, n));
    std::copy(r.begin(), r.end(), out);
  });
}

slb_status slb_algebra_jacobi_defect(const slb_algebra* g, double* out) {
  if (slb_status st = need(g && out, "algebra/out")) return st;
  return guarded([&] { *out = g->v.jacobi_defect(); });
}

slb_status slb_algebra_center(const slb_algebra* g, double tol, double* basis, int* count) {
  if (slb_status st = need(g && basis && count, "algebra/basis/count")) return st;
  return guarded([&] {
    std::vector<Vec> z = g->v.center(tol > 0.0 ? tol : 1e-10);
    int n = g->v.dim();
    *count = static_cast<int>(z.size());
    for (std::size_t r = 0; r < z.size(); ++r)
      for (int i = 0; i < n; ++i) basis[r * static_cast<std::size_t>(n) + i] = z[r][i];
  });
}

/* ---- sprays ------------------------------------------------------------ */

slb_status slb_spray_zero(const slb_algebra* g, slb_spray** out) {
  if (slb_status st = need(g && out, "algebra/out")) return st;
  return guarded([&] { *out = new slb_spray{spraylab::SprayField::zero(g->v)}; });
}

slb_status slb_spray_riemannian(const slb_algebra* g, const double* Q, slb_spray** out) {
  if (slb_status st = need(g && Q && out, "algebra/Q/out")) return st;
  return guarded([&] {
    int n = g->v.dim();
    *out = new slb_spray{spraylab::SprayField::riemannian(g->v, to_mat(Q, n, n))};
  });
}

slb_status slb_spray_randers(const slb_algebra* g, const double* Q, const double* b,
                             slb_spray** out) {
  if (slb_status st = need(g && Q && b && out, "algebra/Q/b/out")) return st;
  return guarded([&] {
    int n = g->v.dim();
    *out = new slb_spray{spraylab::SprayField::randers(g->v, to_mat(Q, n, n), to_vec(b, n))};
  });
}

slb_status slb_spray_quadratic(const slb_algebra* g, const double* T, slb_spray** out) {
  if (slb_status st = need(g && T && out, "algebra/T/out")) return st;
  return guarded([&] {
    int n = g->v.dim();
    std::vector<double> t(T, T + static_cast<std::size_t>(n) * n * n);
    *out = new slb_spray{spraylab::SprayField::quadratic(g->v, t)};
  });
}

slb_status slb_spray_custom(const slb_algebra* g, int n_num, const int* num_exponents,
                            const int* num_targets, const double* num_coeffs, int n_den,
                            const int* den_exponents, const double* den_coeffs, slb_spray** out) {
  if (slb_status st =
          need(g && out && (n_num == 0 || (num_exponents && num_targets && num_coeffs)) &&
                   (n_den == 0 || (den_exponents && den_coeffs)),
               "algebra/terms/out"))
    return st;
  return guarded([&] {
    int n = g->v.dim();
    auto unpack = [n](int count, const int* exps, const int* targets, const double* coeffs) {
      std::vector<spraylab::PolyTerm> terms(static_cast<std::size_t>(count));
      for (int t = 0; t < count; ++t) {
        terms[t].exponents.assign(exps + static_cast<std::size_t>(t) * n,
                                  exps + static_cast<std::size_t>(t + 1) * n);
        terms[t].target = targets ? targets[t] : 0;
        terms[t].coeff = coeffs[t];
      }
      return terms;
    };
    *out = new slb_spray{spraylab::SprayField::custom(
        g->v, unpack(n_num, num_exponents, num_targets, num_coeffs),
        unpack(n_den, den_exponents, nullptr, den_coeffs))};
  });
}

void slb_spray_free(slb_spray* s) { delete s; }

slb_status slb_spray_set_y_floor(slb_spray* s, double floor) {
  if (slb_status st = need(s != nullptr, "spray")) return st;
  return guarded([&] { s->v.set_y_floor(floor); });
}

slb_status slb_spray_set_derivative_mode(slb_spray* s, int mode) {
  if (slb_status st = need(s != nullptr, "spray")) return st;
  return guarded([&] {
    if (mode != 0 && mode != 1)
      throw spraylab::ValidationError("derivative mode must be 0 (dual) or 1 (finite-difference)");
    s->v.set_derivative_mode(mode == 0 ? spraylab::DerivativeMode::Dual
                                       : spraylab::DerivativeMode::FiniteDifference);
  });
}

slb_status slb_spray_eta(const slb_spray* s, const double* y, double* out) {
  return vector_op(s, y, out,
                   [](const spraylab::SprayField& sp, const Vec& yy) { return sp.eta(yy); });
}

slb_status slb_spray_d_eta(const slb_spray* s, const double* y, const double* w, double* out) {
  return vector_op2(s, y, w, out,
                    [](const spraylab::SprayField& sp, const Vec& yy, const Vec& ww) {
                      return sp.d_eta(yy, ww);
                    });
}

slb_status slb_spray_connection(const slb_spray* s, const double* y, const double* w,
                                double* out) {
  return vector_op2(s, y, w, out,
                    [](const spraylab::SprayField& sp, const Vec& yy, const Vec& ww) {
                      return sp.connection(yy, ww);
                    });
}

slb_status slb_spray_fundamental_tensor(const slb_spray* s, const double* y, double* out) {
  if (slb_status st = need(s && y && out, "spray/y/out")) return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    Mat g = s->v.fundamental_tensor(to_vec(y, n));
    std::copy(g.a.begin(), g.a.end(), out);
  });
}

slb_status slb_spray_finsler_norm(const slb_spray* s, const double* y, double* out) {
  if (slb_status st = need(s && y && out, "spray/y/out")) return st;
  return guarded([&] { *out = s->v.finsler_norm(to_vec(y, s->v.algebra().dim())); });
}

/* ---- curvature ---------------------------------------------------------- */

slb_status slb_riemann(const slb_spray* s, const double* y, const double* w, double* out) {
  return vector_op2(s, y, w, out,
                    [](const spraylab::SprayField& sp, const Vec& yy, const Vec& ww) {
                      return spraylab::riemann(sp, yy, ww);
                    });
}

slb_status slb_riemann_via_transport(const slb_spray* s, const double* y0, const double* w0,
                                     double t_probe, const slb_integrator_config* cfg,
                                     double* out) {
  if (slb_status st = need(s && y0 && w0 && out, "spray/y0/w0/out")) return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    Vec r = spraylab::riemann_via_transport(s->v, to_vec(y0, n), to_vec(w0, n), t_probe,
                                            to_cfg(cfg));
    std::copy(r.begin(), r.end(), out);
  });
}

slb_status slb_flag_curvature(const slb_spray* s, const double* y, const double* w, double* out) {
  if (slb_status st = need(s && y && w && out, "spray/y/w/out")) return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    *out = spraylab::flag_curvature(s->v, to_vec(y, n), to_vec(w, n));
  });
}

slb_status slb_s_curvature(const slb_spray* s, const double* y, double* out) {
  if (slb_status st = need(s && y && out, "spray/y/out")) return st;
  return guarded([&] { *out = spraylab::s_curvature(s->v, to_vec(y, s->v.algebra().dim())); });
}

slb_status slb_landsberg(const slb_spray* s, const double* y, const double* w, double* out) {
  if (slb_status st = need(s && y && w && out, "spray/y/w/out")) return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    *out = spraylab::landsberg(s->v, to_vec(y, n), to_vec(w, n));
  });
}

slb_status slb_landsberg_via_transport(const slb_spray* s, const double* y0, const double* w0,
                                       const slb_integrator_config* cfg, double* out) {
  if (slb_status st = need(s && y0 && w0 && out, "spray/y0/w0/out")) return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    *out = spraylab::landsberg_via_transport(s->v, to_vec(y0, n), to_vec(w0, n), to_cfg(cfg));
  });
}

/* ---- curves -------------------------------------------------------------- */

slb_status slb_curve_constant(int dim, const double* w, slb_curve** out) {
  if (slb_status st = need(w && out, "w/out")) return st;
  return guarded(
      [&] { *out = new slb_curve{spraylab::CurveSpec::constant(to_vec(w, dim))}; });
}

slb_status slb_curve_piecewise(int dim, int n_legs, const double* ws, const double* dts,
                               slb_curve** out) {
  if (slb_status st = need(ws && dts && out, "ws/dts/out")) return st;
  return guarded([&] {
    std::vector<Vec> values;
    std::vector<double> durations(dts, dts + n_legs);
    for (int l = 0; l < n_legs; ++l)
      values.push_back(to_vec(ws + static_cast<std::size_t>(l) * dim, dim));
    *out = new slb_curve{spraylab::CurveSpec::piecewise(values, durations)};
  });
}

slb_status slb_curve_sampled(int dim, int n_samples, const double* ts, const double* ws,
                             slb_curve** out) {
  if (slb_status st = need(ts && ws && out, "ts/ws/out")) return st;
  return guarded([&] {
    std::vector<double> times(ts, ts + n_samples);
    std::vector<Vec> values;
    for (int k = 0; k < n_samples; ++k)
      values.push_back(to_vec(ws + static_cast<std::size_t>(k) * dim, dim));
    *out = new slb_curve{spraylab::CurveSpec::sampled(times, values)};
  });
}

slb_status slb_curve_polynomial(int dim, int n_coeffs, const double* coeffs, slb_curve** out) {
  if (slb_status st = need(coeffs && out, "coeffs/out")) return st;
  return guarded([&] {
    std::vector<Vec> c;
    for (int k = 0; k < n_coeffs; ++k)
      c.push_back(to_vec(coeffs + static_cast<std::size_t>(k) * dim, dim));
    *out = new slb_curve{spraylab::CurveSpec::polynomial(c)};
  });
}

void slb_curve_free(slb_curve* c) { delete c; }

slb_status slb_curve_eval(const slb_curve* c, double t, double* out) {
  if (slb_status st = need(c && out, "curve/out")) return st;
  return guarded([&] {
    Vec r = c->v.eval(t);
    std::copy(r.begin(), r.end(), out);
  });
}

/* ---- trajectories --------------------------------------------------------- */

void slb_trajectory_free(slb_trajectory* tr) { delete tr; }

long slb_trajectory_size(const slb_trajectory* tr) {
  return tr ? static_cast<long>(tr->v.size()) : 0;
}

int slb_trajectory_dim(const slb_trajectory* tr) {
  if (!tr || tr->v.x.empty()) return 0;
  return static_cast<int>(tr->v.x[0].size());
}

int slb_trajectory_status(const slb_trajectory* tr) {
  if (!tr) return SLB_TRAJECTORY_DOMAIN_EXIT;
  return tr->v.status == spraylab::TrajectoryStatus::Complete ? SLB_TRAJECTORY_COMPLETE
                                                              : SLB_TRAJECTORY_DOMAIN_EXIT;
}

slb_status slb_trajectory_span(const slb_trajectory* tr, double* t_min, double* t_max) {
  if (slb_status st = need(tr && t_min && t_max, "trajectory/t_min/t_max")) return st;
  return guarded([&] {
    *t_min = tr->v.t_min();
    *t_max = tr->v.t_max();
  });
}

slb_status slb_trajectory_nodes(const slb_trajectory* tr, double* times, double* states) {
  if (slb_status st = need(tr != nullptr, "trajectory")) return st;
  return guarded([&] {
    const spraylab::Trajectory& t = tr->v;
    for (std::size_t k = 0; k < t.t.size(); ++k) {
      if (times) times[k] = t.t[k];
      if (states)
        std::copy(t.x[k].begin(), t.x[k].end(), states + k * t.x[k].size());
    }
  });
}

slb_status slb_trajectory_eval(const slb_trajectory* tr, double t, double* out) {
  if (slb_status st = need(tr && out, "trajectory/out")) return st;
  return guarded([&] {
    Vec r = tr->v.eval(t);
    std::copy(r.begin(), r.end(), out);
  });
}

/* ---- flows ------------------------------------------------------------------ */

slb_status slb_geodesic_flow(const slb_spray* s, const double* y0, double t0, double t1,
                             const slb_integrator_config* cfg, slb_trajectory** out) {
  if (slb_status st = need(s && y0 && out, "spray/y0/out")) return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    *out = new slb_trajectory{spraylab::geodesic_flow(s->v, to_vec(y0, n), t0, t1, to_cfg(cfg))};
  });
}

slb_status slb_linear_transport(const slb_spray* s, const slb_trajectory* geodesic,
                                const double* w0, const slb_integrator_config* cfg,
                                slb_trajectory** out) {
  if (slb_status st = need(s && geodesic && w0 && out, "spray/geodesic/w0/out")) return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    *out = new slb_trajectory{
        spraylab::linear_transport(s->v, geodesic->v, to_vec(w0, n), to_cfg(cfg))};
  });
}

slb_status slb_nonlinear_transport(const slb_spray* s, const slb_curve* w, const double* y0,
                                   double t0, double t1, const slb_integrator_config* cfg,
                                   slb_trajectory** out) {
  if (slb_status st = need(s && w && y0 && out, "spray/curve/y0/out")) return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    *out = new slb_trajectory{
        spraylab::nonlinear_transport(s->v, w->v, to_vec(y0, n), t0, t1, to_cfg(cfg))};
  });
}

slb_status slb_one_param_flow(const slb_spray* s, const double* w, double t, const double* y0,
                              const slb_integrator_config* cfg, double* out) {
  if (slb_status st = need(s && w && y0 && out, "spray/w/y0/out")) return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    Vec r = spraylab::one_param_flow(s->v, to_vec(w, n), t, to_vec(y0, n), to_cfg(cfg));
    std::copy(r.begin(), r.end(), out);
  });
}

slb_status slb_loop_defect(const slb_spray* s, const double* w1, const double* w2, double scale,
                           const double* y0, const slb_integrator_config* cfg, double* out) {
  if (slb_status st = need(s && w1 && w2 && y0 && out, "spray/w1/w2/y0/out")) return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    Vec r = spraylab::loop_defect(s->v, to_vec(w1, n), to_vec(w2, n), scale, to_vec(y0, n),
                                  to_cfg(cfg));
    std::copy(r.begin(), r.end(), out);
  });
}

slb_status slb_loop_defect_slope(const slb_spray* s, const double* w1, const double* w2,
                                 const double* scales, int n_scales, const double* y0,
                                 const slb_integrator_config* cfg, double* defect_norms,
                                 double* slope) {
  if (slb_status st = need(s && w1 && w2 && scales && y0 && defect_norms && slope,
                           "spray/w1/w2/scales/y0/defect_norms/slope"))
    return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    spraylab::LoopDefectLadder ladder = spraylab::loop_defect_ladder(
        s->v, to_vec(w1, n), to_vec(w2, n), std::vector<double>(scales, scales + n_scales),
        to_vec(y0, n), to_cfg(cfg));
    std::copy(ladder.defect_norms.begin(), ladder.defect_norms.end(), defect_norms);
    *slope = ladder.slope;
  });
}

/* ---- holonomy ----------------------------------------------------------------- */

slb_status slb_vf_eval(const slb_spray* s, const char* word, const double* y, double* out) {
  if (slb_status st = need(s && word && y && out, "spray/word/y/out")) return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    spraylab::BracketWord w = spraylab::BracketWord::parse(word, n);
    Vec r = spraylab::vf_eval(s->v, w, to_vec(y, n));
    std::copy(r.begin(), r.end(), out);
  });
}

slb_status slb_words(int dim, int max_depth, long cap, char* buffer, size_t bufcap) {
  if (slb_status st = need(buffer && bufcap > 0, "buffer")) return st;
  return guarded([&] {
    if (cap < 1) throw spraylab::ValidationError("word cap must be positive");
    std::string joined;
    for (const spraylab::BracketWord& w :
         spraylab::generate_words(dim, max_depth, static_cast<std::size_t>(cap))) {
      if (!joined.empty()) joined += '\n';
      joined += w.to_string();
    }
    if (joined.size() + 1 > bufcap)
      throw spraylab::CapacityError("buffer too small for the word list (" +
                                    std::to_string(joined.size() + 1) + " bytes needed)");
    copy_string(buffer, bufcap, joined);
  });
}

slb_status slb_dim_estimate(const slb_spray* s, int max_depth, int samples, double svd_tol,
                            unsigned long long seed, slb_dim_result* results, double* sv_buffer,
                            int sv_cap, int* sv_used) {
  if (slb_status st = need(s && results, "spray/results")) return st;
  return guarded([&] {
    std::vector<spraylab::DimensionEstimate> est =
        spraylab::dim_estimate(s->v, max_depth, samples, svd_tol, seed);
    int used = 0;
    for (std::size_t d = 0; d < est.size(); ++d) {
      slb_dim_result& r = results[d];
      r.depth = est[d].depth;
      r.words = est[d].words;
      r.samples = est[d].samples;
      r.rank = est[d].rank;
      r.sv_offset = 0;
      r.sv_count = 0;
      if (sv_buffer) {
        int m = static_cast<int>(est[d].singular_values.size());
        if (used + m > sv_cap)
          throw spraylab::CapacityError("singular-value buffer too small (" +
                                        std::to_string(used + m) + " needed)");
        std::copy(est[d].singular_values.begin(), est[d].singular_values.end(),
                  sv_buffer + used);
        r.sv_offset = used;
        r.sv_count = m;
        used += m;
      }
    }
    if (sv_used) *sv_used = used;
  });
}

/* ---- matrix presentations -------------------------------------------------------- */

slb_status slb_rep_catalog(const slb_algebra* g, slb_rep** out) {
  if (slb_status st = need(g && out, "algebra/out")) return st;
  return guarded([&] { *out = new slb_rep{spraylab::MatrixRep::catalog(g->v)}; });
}

slb_status slb_rep_create(const slb_algebra* g, int m, const double* generators, slb_rep** out) {
  if (slb_status st = need(g && generators && out, "algebra/generators/out")) return st;
  return guarded([&] {
    if (m < 1) throw spraylab::ValidationError("matrix size must be positive");
    int n = g->v.dim();
    std::vector<Mat> gens;
    for (int i = 0; i < n; ++i)
      gens.push_back(to_mat(generators + static_cast<std::size_t>(i) * m * m, m, m));
    *out = new slb_rep{spraylab::MatrixRep::create(g->v, std::move(gens))};
  });
}

void slb_rep_free(slb_rep* rep) { delete rep; }

int slb_rep_matrix_size(const slb_rep* rep) { return rep ? rep->v.matrix_size() : 0; }

slb_status slb_rep_map(const slb_rep* rep, const double* y, double* out) {
  if (slb_status st = need(rep && y && out, "rep/y/out")) return st;
  return guarded([&] {
    Mat m = rep->v.map(to_vec(y, rep->v.algebra().dim()));
    std::copy(m.a.begin(), m.a.end(), out);
  });
}

slb_status slb_rep_defect(const slb_rep* rep, double* out) {
  if (slb_status st = need(rep && out, "rep/out")) return st;
  return guarded([&] { *out = rep->v.homomorphism_defect(); });
}

slb_status slb_reconstruct_curve(const slb_rep* rep, const slb_trajectory* velocity,
                                 const slb_integrator_config* cfg, const double* c0,
                                 double* times, double* mats, long cap, long* count) {
  if (slb_status st = need(rep && velocity && count, "rep/velocity/count")) return st;
  return guarded([&] {
    int m = rep->v.matrix_size();
    Mat init;
    const Mat* initp = nullptr;
    if (c0) {
      init = to_mat(c0, m, m);
      initp = &init;
    }
    if (!times && !mats) {
      *count = static_cast<long>(velocity->v.size());
      return;
    }
    spraylab::GroupCurve gc = spraylab::reconstruct_curve(rep->v, velocity->v, to_cfg(cfg), initp);
    long nodes = static_cast<long>(gc.t.size());
    if (nodes > cap)
      throw spraylab::CapacityError("group-curve buffer too small (" + std::to_string(nodes) +
                                    " nodes needed)");
    for (long k = 0; k < nodes; ++k) {
      if (times) times[k] = gc.t[static_cast<std::size_t>(k)];
      if (mats)
        std::copy(gc.C[static_cast<std::size_t>(k)].a.begin(),
                  gc.C[static_cast<std::size_t>(k)].a.end(),
                  mats + static_cast<std::size_t>(k) * m * m);
    }
    *count = nodes;
  });
}

slb_status slb_piecewise_endpoint(const slb_rep* rep, int n_legs, const double* ws,
                                  const double* dts, double* out) {
  if (slb_status st = need(rep && ws && dts && out, "rep/ws/dts/out")) return st;
  return guarded([&] {
    Mat m = spraylab::piecewise_endpoint(rep->v,
                                         to_legs(n_legs, ws, dts, rep->v.algebra().dim()));
    std::copy(m.a.begin(), m.a.end(), out);
  });
}

slb_status slb_left_invariance_residual(const slb_rep* rep, const slb_spray* s, int n_legs,
                                        const double* ws, const double* dts, const double* y0,
                                        double t_end, const slb_integrator_config* cfg,
                                        double* out) {
  if (slb_status st = need(rep && s && ws && dts && y0 && out, "rep/spray/ws/dts/y0/out"))
    return st;
  return guarded([&] {
    int n = s->v.algebra().dim();
    *out = spraylab::left_invariance_residual(rep->v, s->v, to_legs(n_legs, ws, dts, n),
                                              to_vec(y0, n), t_end, to_cfg(cfg));
  });
}

/* ---- verification ------------------------------------------------------------------- */

slb_status slb_verify(const slb_spray* s, const slb_integrator_config* cfg,
                      unsigned long long seed, slb_check* results, int cap, int* count,
                      int* all_passed) {
  if (slb_status st = need(s && count && all_passed, "spray/count/all_passed")) return st;
  return guarded([&] {
    spraylab::VerifyReport rep = spraylab::run_verify(s->v, to_cfg(cfg), seed);
    *count = static_cast<int>(rep.suites.size());
    *all_passed = rep.all_passed ? 1 : 0;
    if (!results) return;
    int n = std::min(cap, *count);
    for (int i = 0; i < n; ++i) {
      const spraylab::CheckResult& c = rep.suites[static_cast<std::size_t>(i)];
      copy_string(results[i].name, sizeof(results[i].name), c.name);
      results[i].checks = c.checks;
      results[i].max_residual = c.max_residual;
      results[i].tolerance = c.tolerance;
      results[i].passed = c.passed ? 1 : 0;
      copy_string(results[i].note, sizeof(results[i].note), c.note);
    }
  });
}

}  // extern "C"
