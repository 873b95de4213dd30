#ifndef SPRAYLAB_CORE_TRANSPORT_HPP
#define SPRAYLAB_CORE_TRANSPORT_HPP

#include <vector>

#include "core/integrate.hpp"
#include "core/spray.hpp"
#include "core/types.hpp"

namespace spraylab {

/// Algebra-valued control curve t -> w(t): the logarithmic derivative of
/// a group curve.  Evaluation clamps to the ends of the defined span;
/// kink locations are exposed so integrators can split there exactly.
class CurveSpec {
 public:
  static CurveSpec constant(Vec w);
  /// Legs laid head to tail starting at t = 0; leg i holds value ws[i]
  /// for duration dts[i] (> 0).
  static CurveSpec piecewise(std::vector<Vec> ws, std::vector<double> dts);
  /// Linear interpolation through (ts[i], ws[i]); ts strictly increasing.
  static CurveSpec sampled(std::vector<double> ts, std::vector<Vec> ws);
  /// w(t) = sum_k coeffs[k] * t^k.
  static CurveSpec polynomial(std::vector<Vec> coeffs);

  int dim() const { return dim_; }
  Vec eval(double t) const;
  /// Interior kink times within (t0, t1), sorted in integration order.
  std::vector<double> knots(double t0, double t1) const;

 private:
  enum class Kind { Constant, Piecewise, Sampled, Polynomial };
  Kind kind_ = Kind::Constant;
  int dim_ = 0;
  std::vector<Vec> values_;
  std::vector<double> times_;  // piecewise: boundaries; sampled: sample times
};

/// One leg of a transport loop: hold direction w for duration dt.
struct LoopLeg {
  Vec w;
  double dt = 0.0;
};

/// Integral curve of -eta from y0 over [t0, t1].
Trajectory geodesic_flow(const SprayField& s, const Vec& y0, double t0, double t1,
                         const IntegratorConfig& cfg);

/// Linearly parallel vector field along a geodesic: solves
/// w' + N(y(t), w) + [y(t), w] = 0 with y(t) from the dense output of
/// `path`.  w0 is anchored at the path's requested start time.
Trajectory linear_transport(const SprayField& s, const Trajectory& path, const Vec& w0,
                            const IntegratorConfig& cfg);

/// Same equation along an explicitly given velocity curve y(t) = curve(t).
Trajectory linear_transport(const SprayField& s, const CurveSpec& curve, const Vec& w0,
                            double t0, double t1, const IntegratorConfig& cfg);

/// Nonlinearly parallel velocity along a curve with log-derivative w(t):
/// solves y' + N(y, w(t)) = 0 from y0.
Trajectory nonlinear_transport(const SprayField& s, const CurveSpec& curve, const Vec& y0,
                               double t0, double t1, const IntegratorConfig& cfg);

/// Endpoint of the one-parameter nonlinear flow generated by -N(., w),
/// i.e. nonlinear transport along the constant curve w over [0, t].
Vec one_param_flow(const SprayField& s, const Vec& w, double t, const Vec& y0,
                   const IntegratorConfig& cfg);

/// Composition of one-parameter flows over the legs, in order.
Vec loop_transport(const SprayField& s, const std::vector<LoopLeg>& legs, const Vec& y0,
                   const IntegratorConfig& cfg);

}  // namespace spraylab

#endif
