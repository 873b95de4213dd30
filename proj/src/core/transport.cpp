#include "core/transport.hpp"

#include <algorithm>
#include <cmath>

namespace spraylab {

CurveSpec CurveSpec::constant(Vec w) {
  if (w.empty()) throw ValidationError("curve: empty vector");
  CurveSpec c;
  c.kind_ = Kind::Constant;
  c.dim_ = static_cast<int>(w.size());
  c.values_.push_back(std::move(w));
  return c;
}

CurveSpec CurveSpec::piecewise(std::vector<Vec> ws, std::vector<double> dts) {
  if (ws.empty() || ws.size() != dts.size())
    throw ValidationError("curve: need matching, non-empty leg values and durations");
  CurveSpec c;
  c.kind_ = Kind::Piecewise;
  c.dim_ = static_cast<int>(ws[0].size());
  double t = 0.0;
  for (size_t i = 0; i < ws.size(); ++i) {
    if (static_cast<int>(ws[i].size()) != c.dim_)
      throw ValidationError("curve: leg vectors must share one dimension");
    if (!(dts[i] > 0.0)) throw ValidationError("curve: leg durations must be positive");
    t += dts[i];
    c.times_.push_back(t);  // right boundary of leg i
  }
  c.values_ = std::move(ws);
  return c;
}

CurveSpec CurveSpec::sampled(std::vector<double> ts, std::vector<Vec> ws) {
  if (ts.size() < 2 || ts.size() != ws.size())
    throw ValidationError("curve: sampled form needs at least two matching samples");
  for (size_t i = 1; i < ts.size(); ++i)
    if (!(ts[i] > ts[i - 1]))
      throw ValidationError("curve: sample times must be strictly increasing");
  CurveSpec c;
  c.kind_ = Kind::Sampled;
  c.dim_ = static_cast<int>(ws[0].size());
  for (const Vec& w : ws)
    if (static_cast<int>(w.size()) != c.dim_)
      throw ValidationError("curve: sample vectors must share one dimension");
  c.times_ = std::move(ts);
  c.values_ = std::move(ws);
  return c;
}

CurveSpec CurveSpec::polynomial(std::vector<Vec> coeffs) {
  if (coeffs.empty()) throw ValidationError("curve: polynomial needs at least one coefficient");
  CurveSpec c;
  c.kind_ = Kind::Polynomial;
  c.dim_ = static_cast<int>(coeffs[0].size());
  for (const Vec& v : coeffs)
    if (static_cast<int>(v.size()) != c.dim_)
      throw ValidationError("curve: coefficient vectors must share one dimension");
  c.values_ = std::move(coeffs);
  return c;
}

Vec CurveSpec::eval(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return values_[0];
    case Kind::Piecewise: {
      if (t <= 0.0) return values_.front();
      auto it = std::lower_bound(times_.begin(), times_.end(), t);
      size_t i = static_cast<size_t>(it - times_.begin());
      if (i >= values_.size()) return values_.back();
      return values_[i];
    }
    case Kind::Sampled: {
      if (t <= times_.front()) return values_.front();
      if (t >= times_.back()) return values_.back();
      auto it = std::upper_bound(times_.begin(), times_.end(), t);
      size_t k = static_cast<size_t>(it - times_.begin()) - 1;
      double s = (t - times_[k]) / (times_[k + 1] - times_[k]);
      Vec r(dim_);
      for (int i = 0; i < dim_; ++i)
        r[i] = (1.0 - s) * values_[k][i] + s * values_[k + 1][i];
      return r;
    }
    case Kind::Polynomial: {
      Vec r(dim_, 0.0);
      double p = 1.0;
      for (const Vec& cfs : values_) {
        for (int i = 0; i < dim_; ++i) r[i] += cfs[i] * p;
        p *= t;
      }
      return r;
    }
  }
  throw Error("unreachable curve kind");
}

std::vector<double> CurveSpec::knots(double t0, double t1) const {
  std::vector<double> out;
  if (kind_ != Kind::Piecewise && kind_ != Kind::Sampled) return out;
  double lo = std::min(t0, t1), hi = std::max(t0, t1);
  for (double t : times_)
    if (t > lo && t < hi) out.push_back(t);
  if (t1 < t0) std::reverse(out.begin(), out.end());
  return out;
}

namespace {

OdeRhs guard_domain(std::function<void(double, const Vec&, Vec&)> f) {
  return [f = std::move(f)](double t, const Vec& x, Vec& dxdt) {
    try {
      f(t, x, dxdt);
      return true;
    } catch (const DomainError&) {
      return false;
    }
  };
}

// Integrates over [t0, t1] splitting exactly at the supplied interior
// times; segments are chained into a single trajectory.
Trajectory integrate_split(const OdeRhs& rhs, const Vec& x0, double t0, double t1,
                           const std::vector<double>& splits, const IntegratorConfig& cfg) {
  std::vector<double> bounds;
  bounds.push_back(t0);
  for (double s : splits) bounds.push_back(s);
  bounds.push_back(t1);
  Trajectory all;
  all.t_requested_begin = t0;
  all.t_requested_end = t1;
  Vec x = x0;
  bool forward = t1 >= t0;
  for (size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
    Trajectory piece = integrate(rhs, x, bounds[seg], bounds[seg + 1], cfg);
    // Piece nodes are time-ascending; walk them in integration order.
    int m = piece.size();
    for (int idx = 0; idx < m; ++idx) {
      int i = forward ? idx : m - 1 - idx;
      if (seg > 0 && idx == 0) continue;  // node shared with previous segment
      all.t.push_back(piece.t[i]);
      all.x.push_back(piece.x[i]);
      all.dx.push_back(piece.dx[i]);
    }
    if (piece.status == TrajectoryStatus::DomainExit) {
      all.status = TrajectoryStatus::DomainExit;
      break;
    }
    x = forward ? piece.x.back() : piece.x.front();
  }
  all.forward = forward;
  if (!forward) {
    std::reverse(all.t.begin(), all.t.end());
    std::reverse(all.x.begin(), all.x.end());
    std::reverse(all.dx.begin(), all.dx.end());
  }
  return all;
}

}  // namespace

Trajectory geodesic_flow(const SprayField& s, const Vec& y0, double t0, double t1,
                         const IntegratorConfig& cfg) {
  if (static_cast<int>(y0.size()) != s.algebra().dim())
    throw ValidationError("geodesic_flow: y0 has wrong dimension");
  const int n = s.algebra().dim();
  OdeRhs rhs = guard_domain([&s, n](double, const Vec& y, Vec& dydt) {
    Vec e = s.eta_t<double>(y);
    dydt.resize(n);
    for (int i = 0; i < n; ++i) dydt[i] = -e[i];
  });
  Trajectory tr = integrate(rhs, y0, t0, t1, cfg);
  tr.kind = TrajectoryKind::GeodesicVelocity;
  return tr;
}

namespace {

Trajectory linear_transport_along(const SprayField& s,
                                  const std::function<Vec(double)>& y_of_t, const Vec& w0,
                                  double t0, double t1, const std::vector<double>& splits,
                                  const IntegratorConfig& cfg) {
  const int n = s.algebra().dim();
  if (static_cast<int>(w0.size()) != n)
    throw ValidationError("linear_transport: w0 has wrong dimension");
  OdeRhs rhs = guard_domain([&s, &y_of_t, n](double t, const Vec& w, Vec& dwdt) {
    Vec y = y_of_t(t);
    Vec nw = s.connection_t<double>(y, w);
    Vec br = s.algebra().bracket(y, w);
    dwdt.resize(n);
    for (int i = 0; i < n; ++i) dwdt[i] = -nw[i] - br[i];
  });
  Trajectory tr = integrate_split(rhs, w0, t0, t1, splits, cfg);
  tr.kind = TrajectoryKind::TransportedVector;
  return tr;
}

}  // namespace

Trajectory linear_transport(const SprayField& s, const Trajectory& path, const Vec& w0,
                            const IntegratorConfig& cfg) {
  if (path.size() == 0) throw ValidationError("linear_transport: empty path");
  double t0 = path.t_requested_begin;
  double t1 = path.forward ? path.t_max() : path.t_min();
  auto y_of_t = [&path](double t) { return path.eval(t); };
  return linear_transport_along(s, y_of_t, w0, t0, t1, {}, cfg);
}

Trajectory linear_transport(const SprayField& s, const CurveSpec& curve, const Vec& w0,
                            double t0, double t1, const IntegratorConfig& cfg) {
  if (curve.dim() != s.algebra().dim())
    throw ValidationError("linear_transport: curve dimension mismatch");
  auto y_of_t = [&curve](double t) { return curve.eval(t); };
  return linear_transport_along(s, y_of_t, w0, t0, t1, curve.knots(t0, t1), cfg);
}

Trajectory nonlinear_transport(const SprayField& s, const CurveSpec& curve, const Vec& y0,
                               double t0, double t1, const IntegratorConfig& cfg) {
  const int n = s.algebra().dim();
  if (curve.dim() != n) throw ValidationError("nonlinear_transport: curve dimension mismatch");
  if (static_cast<int>(y0.size()) != n)
    throw ValidationError("nonlinear_transport: y0 has wrong dimension");
  OdeRhs rhs = guard_domain([&s, &curve, n](double t, const Vec& y, Vec& dydt) {
    Vec w = curve.eval(t);
    Vec nw = s.connection_t<double>(y, w);
    dydt.resize(n);
    for (int i = 0; i < n; ++i) dydt[i] = -nw[i];
  });
  Trajectory tr = integrate_split(rhs, y0, t0, t1, curve.knots(t0, t1), cfg);
  tr.kind = TrajectoryKind::NonlinearVelocity;
  return tr;
}

Vec one_param_flow(const SprayField& s, const Vec& w, double t, const Vec& y0,
                   const IntegratorConfig& cfg) {
  Trajectory tr = nonlinear_transport(s, CurveSpec::constant(w), y0, 0.0, t, cfg);
  if (tr.status == TrajectoryStatus::DomainExit)
    throw DomainError("one_param_flow: trajectory left the domain near t = " +
                      std::to_string(tr.forward ? tr.t_max() : tr.t_min()));
  return tr.forward ? tr.x.back() : tr.x.front();
}

Vec loop_transport(const SprayField& s, const std::vector<LoopLeg>& legs, const Vec& y0,
                   const IntegratorConfig& cfg) {
  if (legs.empty()) throw ValidationError("loop_transport: no legs given");
  Vec y = y0;
  for (const LoopLeg& leg : legs) {
    if (!(leg.dt >= 0.0)) throw ValidationError("loop_transport: leg durations must be >= 0");
    if (leg.dt == 0.0) continue;
    y = one_param_flow(s, leg.w, leg.dt, y, cfg);
  }
  return y;
}

}  // namespace spraylab
