#include "core/dual.hpp"

#include "doctest.h"

using spraylab::Dual;

namespace {

// f(x) = x^3 - 2x + 1/x, f'(x) = 3x^2 - 2 - 1/x^2, f''(x) = 6x + 2/x^3
template <class T>
T f(const T& x) {
  return x * x * x - 2.0 * x + 1.0 / x;
}

}  // namespace

TEST_CASE("first derivative through one dual level") {
  double x = 1.7;
  Dual<double> d = f(Dual<double>(x, 1.0));
  CHECK(d.a == doctest::Approx(f(x)).epsilon(1e-15));
  CHECK(d.b == doctest::Approx(3 * x * x - 2 - 1 / (x * x)).epsilon(1e-14));
}

TEST_CASE("second derivative through nested duals") {
  double x = 0.9;
  Dual<Dual<double>> xx(Dual<double>(x, 1.0), Dual<double>(1.0, 0.0));
  Dual<Dual<double>> d = f(xx);
  CHECK(d.a.a == doctest::Approx(f(x)));
  CHECK(d.a.b == doctest::Approx(3 * x * x - 2 - 1 / (x * x)));
  CHECK(d.b.a == doctest::Approx(3 * x * x - 2 - 1 / (x * x)));
  CHECK(d.b.b == doctest::Approx(6 * x + 2 / (x * x * x)).epsilon(1e-12));
}

TEST_CASE("sqrt derivative") {
  double x = 2.3;
  Dual<double> d = sqrt(Dual<double>(x, 1.0));
  CHECK(d.a == doctest::Approx(std::sqrt(x)));
  CHECK(d.b == doctest::Approx(0.5 / std::sqrt(x)));
}

TEST_CASE("mixed second derivative of a product") {
  // g(u, v) = u^2 v; d^2 g / du dv = 2u.
  double u = 1.3, v = -0.4;
  using D2 = Dual<Dual<double>>;
  D2 uu(Dual<double>(u, 1.0), Dual<double>(0.0, 0.0));  // inner seed: u
  D2 vv(Dual<double>(v, 0.0), Dual<double>(1.0, 0.0));  // outer seed: v
  D2 g = uu * uu * vv;
  CHECK(g.a.a == doctest::Approx(u * u * v));
  CHECK(g.a.b == doctest::Approx(2 * u * v));  // dg/du
  CHECK(g.b.a == doctest::Approx(u * u));      // dg/dv
  CHECK(g.b.b == doctest::Approx(2 * u));      // d2g/dudv
}

TEST_CASE("division rule") {
  double x = 3.0;
  Dual<double> d = Dual<double>(1.0, 0.0) / Dual<double>(x, 1.0);
  CHECK(d.a == doctest::Approx(1.0 / x));
  CHECK(d.b == doctest::Approx(-1.0 / (x * x)));
}

TEST_CASE("real_part reaches through nesting") {
  Dual<Dual<double>> x(Dual<double>(4.5, 1.0), Dual<double>(2.0, 3.0));
  CHECK(spraylab::real_part(x) == 4.5);
  CHECK(spraylab::real_part(7.25) == 7.25);
}
