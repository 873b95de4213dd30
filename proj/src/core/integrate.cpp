#include "core/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace spraylab {

namespace {

bool finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 0.2;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

struct StepperState {
  const OdeRhs& rhs;
  Trajectory out;  // nodes appended in integration order
  long evals = 0;
};

void append_node(Trajectory& tr, double t, const Vec& x, const Vec& dx) {
  tr.t.push_back(t);
  tr.x.push_back(x);
  tr.dx.push_back(dx);
}

void finalize(Trajectory& tr, bool forward) {
  tr.forward = forward;
  if (!forward) {
    std::reverse(tr.t.begin(), tr.t.end());
    std::reverse(tr.x.begin(), tr.x.end());
    std::reverse(tr.dx.begin(), tr.dx.end());
  }
}

}  // namespace

Vec Trajectory::eval(double at) const {
  if (t.empty()) throw ValidationError("trajectory is empty");
  double lo = t.front(), hi = t.back();
  double slack = 1e-9 * (1.0 + std::abs(hi - lo));
  if (at < lo - slack || at > hi + slack)
    throw ValidationError("dense-output query at t = " + std::to_string(at) +
                          " lies outside the covered span [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  at = std::min(std::max(at, lo), hi);
  if (t.size() == 1) return x[0];
  auto it = std::upper_bound(t.begin(), t.end(), at);
  size_t k = it == t.begin() ? 0 : static_cast<size_t>(it - t.begin()) - 1;
  if (k + 1 >= t.size()) k = t.size() - 2;
  double h = t[k + 1] - t[k];
  double s = (at - t[k]) / h;
  double s2 = s * s, s3 = s2 * s;
  double h00 = 2 * s3 - 3 * s2 + 1;
  double h10 = s3 - 2 * s2 + s;
  double h01 = -2 * s3 + 3 * s2;
  double h11 = s3 - s2;
  Vec r(x[k].size());
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = h00 * x[k][i] + h10 * h * dx[k][i] + h01 * x[k + 1][i] + h11 * h * dx[k + 1][i];
  return r;
}

Vec Trajectory::eval_derivative(double at) const {
  if (t.size() < 2) {
    if (t.size() == 1) return dx[0];
    throw ValidationError("trajectory is empty");
  }
  double lo = t.front(), hi = t.back();
  at = std::min(std::max(at, lo), hi);
  auto it = std::upper_bound(t.begin(), t.end(), at);
  size_t k = it == t.begin() ? 0 : static_cast<size_t>(it - t.begin()) - 1;
  if (k + 1 >= t.size()) k = t.size() - 2;
  double h = t[k + 1] - t[k];
  double s = (at - t[k]) / h;
  double d00 = (6 * s * s - 6 * s) / h;
  double d10 = 3 * s * s - 4 * s + 1;
  double d01 = (-6 * s * s + 6 * s) / h;
  double d11 = 3 * s * s - 2 * s;
  Vec r(x[k].size());
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = d00 * x[k][i] + d10 * dx[k][i] + d01 * x[k + 1][i] + d11 * dx[k + 1][i];
  return r;
}

namespace {

Trajectory integrate_rk4(const OdeRhs& rhs, const Vec& x0, double t0, double t1,
                         const IntegratorConfig& cfg) {
  if (!(cfg.fixed_step > 0.0)) throw ValidationError("rk4: fixed_step must be positive");
  Trajectory tr;
  tr.t_requested_begin = t0;
  tr.t_requested_end = t1;
  const double span = t1 - t0;
  const double dir = span >= 0.0 ? 1.0 : -1.0;
  const int n = static_cast<int>(x0.size());
  Vec x = x0, k1(n), k2(n), k3(n), k4(n), tmp(n);
  double t = t0;
  if (!rhs(t, x, k1)) {
    throw IntegrationFailure("rk4: initial state is outside the domain", tr);
  }
  append_node(tr, t, x, k1);
  if (std::abs(span) == 0.0) {
    finalize(tr, true);
    return tr;
  }
  long nsteps = static_cast<long>(std::ceil(std::abs(span) / cfg.fixed_step));
  nsteps = std::max<long>(nsteps, 1);
  if (nsteps > cfg.max_steps) {
    finalize(tr, dir > 0);
    throw IntegrationFailure("rk4: step budget exceeded before start", std::move(tr));
  }
  bool domain_exit = false;
  for (long step = 0; step < nsteps; ++step) {
    double h = dir * std::min(cfg.fixed_step, std::abs(t1 - t));
    if (step == nsteps - 1) h = t1 - t;  // land exactly on the endpoint
    bool ok = true;
    for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    ok = ok && rhs(t + 0.5 * h, tmp, k2);
    if (ok) {
      for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
      ok = ok && rhs(t + 0.5 * h, tmp, k3);
    }
    if (ok) {
      for (int i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
      ok = ok && rhs(t + h, tmp, k4);
    }
    Vec xn(n);
    if (ok) {
      for (int i = 0; i < n; ++i)
        xn[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      ok = finite(xn) && rhs(t + h, xn, k1);
    }
    if (!ok) {
      domain_exit = true;
      break;
    }
    t += h;
    x = xn;
    append_node(tr, t, x, k1);
  }
  tr.status = domain_exit ? TrajectoryStatus::DomainExit : TrajectoryStatus::Complete;
  finalize(tr, dir > 0);
  return tr;
}

Trajectory integrate_dopri(const OdeRhs& rhs, const Vec& x0, double t0, double t1,
                           const IntegratorConfig& cfg) {
  Trajectory tr;
  tr.t_requested_begin = t0;
  tr.t_requested_end = t1;
  const double span = t1 - t0;
  const double dir = span >= 0.0 ? 1.0 : -1.0;
  const int n = static_cast<int>(x0.size());
  const double atol = cfg.abs_tol, rtol = cfg.rel_tol;
  if (!(atol > 0.0) || !(rtol > 0.0))
    throw ValidationError("dopri: tolerances must be positive");

  Vec x = x0;
  double t = t0;
  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), xn(n);
  if (!rhs(t, x, k1))
    throw IntegrationFailure("dopri: initial state is outside the domain", tr);
  append_node(tr, t, x, k1);

  if (std::abs(span) == 0.0) {
    finalize(tr, true);
    return tr;
  }

  double hmax = cfg.max_step > 0.0 ? cfg.max_step : std::abs(span);
  // Initial step from the state scale; the controller corrects quickly.
  double xs = norm2(x), fs = norm2(k1);
  double h = 0.01 * (xs > 1e-12 && fs > 1e-12 ? xs / fs : 1.0);
  h = std::min({h, std::abs(span), hmax});
  h = std::max(h, 1e-12 * std::abs(span));

  const double hmin_abs = 1e-14 * std::max(1.0, std::max(std::abs(t0), std::abs(t1)));
  bool domain_exit = false;
  long accepted = 0;

  for (long iter = 0;; ++iter) {
    if (iter >= cfg.max_steps) {
      tr.status = TrajectoryStatus::Complete;
      finalize(tr, dir > 0);
      throw IntegrationFailure("dopri: step budget of " + std::to_string(cfg.max_steps) +
                                   " exceeded",
                               std::move(tr));
    }
    double remaining = std::abs(t1 - t);
    if (remaining <= 1e-14 * std::max(1.0, std::abs(t1))) break;
    h = std::min(h, remaining);
    double hd = dir * h;

    bool stage_ok = true;
    auto stage = [&](double frac, const Vec& p, Vec& k) {
      if (!stage_ok) return;
      if (!rhs(t + frac * hd, p, k)) stage_ok = false;
    };
    for (int i = 0; i < n; ++i) tmp[i] = x[i] + hd * a21 * k1[i];
    stage(c2, tmp, k2);
    if (stage_ok) {
      for (int i = 0; i < n; ++i) tmp[i] = x[i] + hd * (a31 * k1[i] + a32 * k2[i]);
      stage(c3, tmp, k3);
    }
    if (stage_ok) {
      for (int i = 0; i < n; ++i)
        tmp[i] = x[i] + hd * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      stage(c4, tmp, k4);
    }
    if (stage_ok) {
      for (int i = 0; i < n; ++i)
        tmp[i] = x[i] + hd * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      stage(c5, tmp, k5);
    }
    if (stage_ok) {
      for (int i = 0; i < n; ++i)
        tmp[i] =
            x[i] + hd * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      stage(1.0, tmp, k6);
    }
    if (stage_ok) {
      for (int i = 0; i < n; ++i)
        xn[i] =
            x[i] + hd * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      stage_ok = finite(xn);
    }
    if (stage_ok) stage(1.0, xn, k7);

    if (!stage_ok) {
      // Either grazing the domain boundary or blowing up: shrink and retry,
      // report a domain exit when steps become meaningless.
      h *= 0.25;
      if (h < hmin_abs) {
        domain_exit = true;
        break;
      }
      continue;
    }

    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      double e = hd * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                       e7 * k7[i]);
      double sc = atol + rtol * std::max(std::abs(x[i]), std::abs(xn[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / n);

    if (err <= 1.0) {
      t += hd;
      x = xn;
      k1 = k7;  // first-same-as-last
      append_node(tr, t, x, k1);
      ++accepted;
    }
    double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    fac = std::min(5.0, std::max(0.2, fac));
    h = std::min(h * fac, hmax);
    if (h < hmin_abs) {
      if (err <= 1.0) continue;  // accepted with a tiny step near the end
      finalize(tr, dir > 0);
      throw IntegrationFailure("dopri: step size underflow at t = " + std::to_string(t),
                               std::move(tr));
    }
  }
  tr.status = domain_exit ? TrajectoryStatus::DomainExit : TrajectoryStatus::Complete;
  finalize(tr, dir > 0);
  return tr;
}

}  // namespace

Trajectory integrate(const OdeRhs& rhs, const Vec& x0, double t0, double t1,
                     const IntegratorConfig& cfg) {
  if (x0.empty()) throw ValidationError("integrate: empty state");
  if (!finite(x0)) throw ValidationError("integrate: initial state is not finite");
  if (cfg.method == StepperKind::RK4Fixed) return integrate_rk4(rhs, x0, t0, t1, cfg);
  return integrate_dopri(rhs, x0, t0, t1, cfg);
}

}  // namespace spraylab
