#include "core/curvature.hpp"

#include <cfloat>
#include <cmath>

#include "core/dual.hpp"

namespace spraylab {

namespace {

// Directional derivative of N(., w) at y along direction d, by central
// differences with one Richardson refinement.  Used in FiniteDifference mode.
Vec dn_direction_fd(const SprayField& s, const Vec& y, const Vec& w, const Vec& d) {
  const int n = s.algebra().dim();
  const double h = std::cbrt(DBL_EPSILON) * std::max(1.0, norm2(y));
  auto diff = [&](double step) {
    Vec plus = s.connection(axpy(step, d, y), w);
    Vec minus = s.connection(axpy(-step, d, y), w);
    Vec out(n);
    for (int i = 0; i < n; ++i) out[i] = (plus[i] - minus[i]) / (2.0 * step);
    return out;
  };
  Vec coarse = diff(h);
  Vec fine = diff(h / 2.0);
  Vec out(n);
  for (int i = 0; i < n; ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return out;
}

}  // namespace

Vec dn_direction(const SprayField& s, const Vec& y, const Vec& w) {
  const int n = s.algebra().dim();
  if (static_cast<int>(y.size()) != n || static_cast<int>(w.size()) != n) {
    throw ValidationError("dn_direction: vector size does not match the algebra dimension");
  }
  Vec dir = s.eta(y);
  if (s.derivative_mode() == DerivativeMode::FiniteDifference) {
    return dn_direction_fd(s, y, w, dir);
  }
  VecT<Dual<double>> yy(n), ww(n);
  for (int i = 0; i < n; ++i) {
    yy[i] = Dual<double>(y[i], dir[i]);
    ww[i] = Dual<double>(w[i], 0.0);
  }
  VecT<Dual<double>> nd = s.connection_t(yy, ww);
  Vec out(n);
  for (int i = 0; i < n; ++i) out[i] = nd[i].b;
  return out;
}

Vec riemann(const SprayField& s, const Vec& y, const Vec& w) {
  const int n = s.algebra().dim();
  if (static_cast<int>(y.size()) != n || static_cast<int>(w.size()) != n) {
    throw ValidationError("riemann: vector size does not match the algebra dimension");
  }
  const LieAlgebra& g = s.algebra();
  Vec nw = s.connection(y, w);        // N(y, w)
  Vec term1 = dn_direction(s, y, w);  // DN(eta; y, w)
  Vec term2 = s.connection(y, nw);    // N(y, N(y,w))
  Vec term3 = s.connection(y, g.bracket(y, w));
  Vec term4 = g.bracket(y, nw);
  Vec out(n);
  for (int i = 0; i < n; ++i) out[i] = term1[i] - term2[i] + term3[i] - term4[i];
  return out;
}

Vec riemann_via_transport(const SprayField& s, const Vec& y0, const Vec& w0, double t_probe,
                          const IntegratorConfig& cfg) {
  const int n = s.algebra().dim();
  if (static_cast<int>(y0.size()) != n || static_cast<int>(w0.size()) != n) {
    throw ValidationError("riemann_via_transport: vector size does not match the algebra dimension");
  }
  const double time_scale = std::max(1.0, std::abs(t_probe));
  const double h = 1e-4 * time_scale;

  // The stencil needs smooth samples of w(t) on [t_probe - 4h, t_probe + 4h].
  // Integrate in two phases: first reach the left edge of the window (which
  // may lie behind t = 0), then run forward across the whole window in a
  // single pass so every sample comes from one smooth trajectory.
  const double t_lo = std::min(0.0, t_probe - 4.0 * h - 2.0 * h);
  const double t_hi = t_probe + 4.0 * h + 2.0 * h;

  Vec y_lo = y0;
  Vec w_lo = w0;
  if (t_lo != 0.0) {
    Trajectory leg = geodesic_flow(s, y0, 0.0, t_lo, cfg);
    if (leg.status != TrajectoryStatus::Complete) {
      throw DomainError("riemann_via_transport: geodesic left the spray domain before the probe window");
    }
    Trajectory wleg = linear_transport(s, leg, w0, cfg);
    if (wleg.status != TrajectoryStatus::Complete) {
      throw DomainError("riemann_via_transport: transport left the spray domain before the probe window");
    }
    y_lo = leg.eval(t_lo);
    w_lo = wleg.eval(t_lo);
  }

  // Cap the step size across the window: the stencil differentiates the
  // dense output twice, so interpolation cells must stay small compared to
  // the stencil width.
  IntegratorConfig fine = cfg;
  const double cap = 5e-3 * time_scale;
  fine.max_step = (fine.max_step > 0.0) ? std::min(fine.max_step, cap) : cap;

  Trajectory geo = geodesic_flow(s, y_lo, t_lo, t_hi, fine);
  if (geo.status != TrajectoryStatus::Complete) {
    throw DomainError("riemann_via_transport: geodesic left the spray domain inside the probe window");
  }
  Trajectory par = linear_transport(s, geo, w_lo, fine);
  if (par.status != TrajectoryStatus::Complete) {
    throw DomainError("riemann_via_transport: transport left the spray domain inside the probe window");
  }

  // Sample the window and form N(t) = dw/dt + D-eta(y(t); w(t)) on the inner
  // nodes, then differentiate N(t) once more at the centre.
  std::vector<Vec> ys(9), ws(9);
  for (int j = -4; j <= 4; ++j) {
    const double t = t_probe + j * h;
    ys[j + 4] = geo.eval(t);
    ws[j + 4] = par.eval(t);
  }
  auto stencil5 = [&](const std::vector<Vec>& f, int centre) {
    Vec out(n);
    for (int i = 0; i < n; ++i) {
      out[i] = (f[centre - 2][i] - 8.0 * f[centre - 1][i] + 8.0 * f[centre + 1][i] -
                f[centre + 2][i]) /
                (12.0 * h);
    }
    return out;
  };
  std::vector<Vec> nval(9);
  for (int c = 2; c <= 6; ++c) {
    Vec dwdt = stencil5(ws, c);
    Vec de = s.d_eta(ys[c], ws[c]);
    nval[c] = Vec(n);
    for (int i = 0; i < n; ++i) nval[c][i] = dwdt[i] + de[i];
  }
  std::vector<Vec> inner(nval.begin() + 2, nval.begin() + 7);
  Vec dndt = stencil5(inner, 2);
  Vec de_n = s.d_eta(ys[4], nval[4]);
  Vec out(n);
  for (int i = 0; i < n; ++i) out[i] = -dndt[i] - de_n[i];
  return out;
}

double flag_curvature(const SprayField& s, const Vec& y, const Vec& w) {
  if (!s.is_metric()) {
    throw UnsupportedError("flag_curvature: requires a metric spray variant");
  }
  Mat g = s.fundamental_tensor(y);
  const int n = g.rows;
  Vec r = riemann(s, y, w);
  auto form = [&](const Vec& u, const Vec& v) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc += u[i] * g(i, j) * v[j];
    return acc;
  };
  const double gyy = form(y, y);
  const double gww = form(w, w);
  const double gyw = form(y, w);
  const double denom = gyy * gww - gyw * gyw;
  if (denom < 1e-12) {
    throw ValidationError("flag_curvature: flag is degenerate (w is parallel to y or too small)");
  }
  return form(r, w) / denom;
}

double s_curvature(const SprayField& s, const Vec& y) {
  const int n = s.algebra().dim();
  if (static_cast<int>(y.size()) != n) {
    throw ValidationError("s_curvature: vector size does not match the algebra dimension");
  }
  double trace_n = 0.0;
  Vec e(n, 0.0);
  for (int i = 0; i < n; ++i) {
    e[i] = 1.0;
    trace_n += s.connection(y, e)[i];
    e[i] = 0.0;
  }
  Mat ad = s.algebra().ad(y);
  double trace_ad = 0.0;
  for (int i = 0; i < n; ++i) trace_ad += ad(i, i);
  return trace_n + trace_ad;
}

double landsberg(const SprayField& s, const Vec& y, const Vec& w) {
  if (!s.is_metric()) {
    throw UnsupportedError("landsberg: requires a metric spray variant");
  }
  const int n = s.algebra().dim();
  if (static_cast<int>(y.size()) != n || static_cast<int>(w.size()) != n) {
    throw ValidationError("landsberg: vector size does not match the algebra dimension");
  }
  CartanTensor c = s.cartan_tensor(y);
  Vec third = sub(s.algebra().bracket(w, y), s.connection(y, w));  // [w,y] - N(y,w)
  Vec dir = s.eta(y);
  return 3.0 * c.eval(w, w, third) - c.eval_deriv(w, w, w, dir);
}

double landsberg_via_transport(const SprayField& s, const Vec& y0, const Vec& w0,
                               const IntegratorConfig& cfg) {
  if (!s.is_metric()) {
    throw UnsupportedError("landsberg_via_transport: requires a metric spray variant");
  }
  const double h = 1e-3;
  auto cartan_at = [&](double t) {
    Trajectory geo = geodesic_flow(s, y0, 0.0, t * 1.25, cfg);
    if (geo.status != TrajectoryStatus::Complete) {
      throw DomainError("landsberg_via_transport: geodesic left the spray domain near t = 0");
    }
    Trajectory par = linear_transport(s, geo, w0, cfg);
    if (par.status != TrajectoryStatus::Complete) {
      throw DomainError("landsberg_via_transport: transport left the spray domain near t = 0");
    }
    Vec yt = geo.eval(t);
    Vec wt = par.eval(t);
    return s.cartan_tensor(yt).eval(wt, wt, wt);
  };
  return (cartan_at(h) - cartan_at(-h)) / (2.0 * h);
}

}  // namespace spraylab
