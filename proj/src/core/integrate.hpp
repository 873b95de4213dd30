#ifndef SPRAYLAB_CORE_INTEGRATE_HPP
#define SPRAYLAB_CORE_INTEGRATE_HPP

#include <functional>
#include <vector>

#include "core/types.hpp"

namespace spraylab {

enum class StepperKind { RK4Fixed, Dopri5 };

struct IntegratorConfig {
  StepperKind method = StepperKind::Dopri5;
  double fixed_step = 1e-3;  // rk4 only
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double max_step = 0.0;  // 0 disables the cap
  long max_steps = 2000000;
};

enum class TrajectoryStatus { Complete, DomainExit };

enum class TrajectoryKind { GeodesicVelocity, TransportedVector, NonlinearVelocity, Generic };

/// Time-ordered solution samples with derivative data for dense output.
/// Nodes are stored with strictly increasing times regardless of the
/// integration direction.
struct Trajectory {
  std::vector<double> t;
  std::vector<Vec> x;
  std::vector<Vec> dx;
  TrajectoryStatus status = TrajectoryStatus::Complete;
  TrajectoryKind kind = TrajectoryKind::Generic;
  double t_requested_begin = 0.0;
  double t_requested_end = 0.0;
  bool forward = true;

  int size() const { return static_cast<int>(t.size()); }
  double t_min() const { return t.front(); }
  double t_max() const { return t.back(); }

  /// Cubic Hermite interpolation between stored nodes.
  Vec eval(double at) const;
  /// Time derivative of the interpolant.
  Vec eval_derivative(double at) const;
};

/// Right-hand side callback.  Returns false when the state is outside
/// the admissible domain (the stepper then retries with smaller steps
/// and finally reports a domain exit).
using OdeRhs = std::function<bool(double, const Vec&, Vec&)>;

/// Thrown on step-size underflow away from the domain boundary or on
/// exhaustion of the step budget; carries whatever was integrated.
struct IntegrationFailure : IntegrationError {
  IntegrationFailure(const std::string& msg, Trajectory partial_)
      : IntegrationError(msg), partial(std::move(partial_)) {}
  Trajectory partial;
};

/// Integrates x' = rhs(t, x) over [t0, t1] (either direction).
Trajectory integrate(const OdeRhs& rhs, const Vec& x0, double t0, double t1,
                     const IntegratorConfig& cfg);

}  // namespace spraylab

#endif
