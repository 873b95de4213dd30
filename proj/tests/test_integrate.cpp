#include "core/integrate.hpp"

#include <cmath>

#include "doctest.h"

using spraylab::IntegratorConfig;
using spraylab::OdeRhs;
using spraylab::StepperKind;
using spraylab::Trajectory;
using spraylab::Vec;

namespace {

const OdeRhs kDecay = [](double, const Vec& x, Vec& dx) {
  dx = {-x[0]};
  return true;
};

const OdeRhs kOscillator = [](double, const Vec& x, Vec& dx) {
  dx = {x[1], -x[0]};
  return true;
};

}  // namespace

TEST_CASE("adaptive stepper solves exponential decay to tolerance") {
  IntegratorConfig cfg;
  cfg.abs_tol = cfg.rel_tol = 1e-12;
  Trajectory tr = spraylab::integrate(kDecay, {1.0}, 0.0, 5.0, cfg);
  REQUIRE(tr.status == spraylab::TrajectoryStatus::Complete);
  CHECK(tr.x.back()[0] == doctest::Approx(std::exp(-5.0)).epsilon(1e-9));
}

TEST_CASE("fixed rk4 matches the oscillator closed form") {
  IntegratorConfig cfg;
  cfg.method = StepperKind::RK4Fixed;
  cfg.fixed_step = 1e-3;
  Trajectory tr = spraylab::integrate(kOscillator, {1.0, 0.0}, 0.0, 3.0, cfg);
  CHECK(tr.x.back()[0] == doctest::Approx(std::cos(3.0)).epsilon(1e-10));
  CHECK(tr.x.back()[1] == doctest::Approx(-std::sin(3.0)).epsilon(1e-10));
}

TEST_CASE("rk4 shows fourth-order global convergence") {
  auto endpoint_error = [](double h) {
    IntegratorConfig cfg;
    cfg.method = StepperKind::RK4Fixed;
    cfg.fixed_step = h;
    Trajectory tr = spraylab::integrate(kOscillator, {1.0, 0.0}, 0.0, 2.0, cfg);
    return std::fabs(tr.x.back()[0] - std::cos(2.0));
  };
  double e1 = endpoint_error(0.05);
  double e2 = endpoint_error(0.025);
  double order = std::log2(e1 / e2);
  CHECK(order > 3.8);
  CHECK(order < 4.3);
}

TEST_CASE("backward integration stores increasing times") {
  IntegratorConfig cfg;
  Trajectory tr = spraylab::integrate(kDecay, {1.0}, 0.0, -2.0, cfg);
  REQUIRE(tr.size() >= 2);
  CHECK(tr.t.front() == doctest::Approx(-2.0));
  CHECK(tr.t.back() == doctest::Approx(0.0));
  for (int i = 1; i < tr.size(); ++i) CHECK(tr.t[static_cast<size_t>(i)] > tr.t[static_cast<size_t>(i - 1)]);
  // x(-2) = e^{+2} for decay run backwards from x(0)=1.
  CHECK(tr.eval(-2.0)[0] == doctest::Approx(std::exp(2.0)).epsilon(1e-8));
}

TEST_CASE("dense output is accurate between nodes") {
  IntegratorConfig cfg;
  cfg.abs_tol = cfg.rel_tol = 1e-10;
  Trajectory tr = spraylab::integrate(kOscillator, {1.0, 0.0}, 0.0, 6.0, cfg);
  for (double t : {0.37, 1.94, 3.11, 5.72}) {
    Vec x = tr.eval(t);
    CHECK(x[0] == doctest::Approx(std::cos(t)).epsilon(1e-7));
    CHECK(x[1] == doctest::Approx(-std::sin(t)).epsilon(1e-7));
  }
  // Derivative of the interpolant approximates the rhs.
  Vec dx = tr.eval_derivative(2.5);
  CHECK(dx[0] == doctest::Approx(-std::sin(2.5)).epsilon(1e-5));
}

TEST_CASE("evaluating outside the covered span is rejected") {
  Trajectory tr = spraylab::integrate(kDecay, {1.0}, 0.0, 1.0, IntegratorConfig{});
  CHECK_THROWS_AS(tr.eval(1.5), spraylab::ValidationError);
  CHECK_THROWS_AS(tr.eval(-0.5), spraylab::ValidationError);
}

TEST_CASE("domain exit is detected and reported") {
  // Inadmissible below x = 0.5; decay crosses it at t = ln 2.
  OdeRhs guarded = [](double, const Vec& x, Vec& dx) {
    if (x[0] < 0.5) return false;
    dx = {-x[0]};
    return true;
  };
  Trajectory tr = spraylab::integrate(guarded, {1.0}, 0.0, 5.0, IntegratorConfig{});
  CHECK(tr.status == spraylab::TrajectoryStatus::DomainExit);
  CHECK(tr.t.back() == doctest::Approx(std::log(2.0)).epsilon(1e-3));
  CHECK(tr.t.back() < 5.0);
}

TEST_CASE("step budget exhaustion carries the partial trajectory") {
  IntegratorConfig cfg;
  cfg.max_steps = 5;
  cfg.max_step = 0.5;
  try {
    spraylab::integrate(kDecay, {1.0}, 0.0, 100.0, cfg);
    FAIL("expected IntegrationFailure");
  } catch (const spraylab::IntegrationFailure& e) {
    CHECK(e.partial.size() >= 2);
    CHECK(e.partial.t.back() < 100.0);
  }
}

TEST_CASE("zero-length span returns the initial state") {
  for (StepperKind kind : {StepperKind::Dopri5, StepperKind::RK4Fixed}) {
    IntegratorConfig cfg;
    cfg.method = kind;
    Trajectory tr = spraylab::integrate(kDecay, {1.0}, 2.0, 2.0, cfg);
    CHECK(tr.status == spraylab::TrajectoryStatus::Complete);
    CHECK(tr.eval(2.0)[0] == 1.0);
  }
}

TEST_CASE("max_step cap is honored") {
  IntegratorConfig cfg;
  cfg.max_step = 0.01;
  Trajectory tr = spraylab::integrate(kDecay, {1.0}, 0.0, 1.0, cfg);
  for (int i = 1; i < tr.size(); ++i)
    CHECK(tr.t[static_cast<size_t>(i)] - tr.t[static_cast<size_t>(i - 1)] <= 0.01 + 1e-12);
}

TEST_CASE("invalid configurations are rejected") {
  IntegratorConfig cfg;
  cfg.abs_tol = -1.0;
  CHECK_THROWS_AS(spraylab::integrate(kDecay, {1.0}, 0.0, 1.0, cfg),
                  spraylab::ValidationError);
  IntegratorConfig cfg2;
  cfg2.method = StepperKind::RK4Fixed;
  cfg2.fixed_step = 0.0;
  CHECK_THROWS_AS(spraylab::integrate(kDecay, {1.0}, 0.0, 1.0, cfg2),
                  spraylab::ValidationError);
}
