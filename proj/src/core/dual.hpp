#ifndef SPRAYLAB_CORE_DUAL_HPP
#define SPRAYLAB_CORE_DUAL_HPP

#include <cmath>
#include <type_traits>

namespace spraylab {

/// Forward-mode scalar: value plus one infinitesimal component.
/// Nest the type (Dual<Dual<double>> and deeper) to reach higher
/// mixed derivatives; each level carries one independent seed.
template <class T>
struct Dual {
  T a{};  // value
  T b{};  // derivative w.r.t. this level's seed

  Dual() = default;
  Dual(const T& value) : a(value) {}
  template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
  Dual(double value) : a(value) {}
  Dual(const T& value, const T& deriv) : a(value), b(deriv) {}
};

template <class T>
Dual<T> operator+(const Dual<T>& x, const Dual<T>& y) {
  return {x.a + y.a, x.b + y.b};
}
template <class T>
Dual<T> operator-(const Dual<T>& x, const Dual<T>& y) {
  return {x.a - y.a, x.b - y.b};
}
template <class T>
Dual<T> operator-(const Dual<T>& x) {
  return {-x.a, -x.b};
}
template <class T>
Dual<T> operator*(const Dual<T>& x, const Dual<T>& y) {
  return {x.a * y.a, x.a * y.b + x.b * y.a};
}
template <class T>
Dual<T> operator/(const Dual<T>& x, const Dual<T>& y) {
  T inv = T(1.0) / y.a;
  T q = x.a * inv;
  return {q, (x.b - q * y.b) * inv};
}

template <class T>
Dual<T> operator+(const Dual<T>& x, double c) {
  return {x.a + T(c), x.b};
}
template <class T>
Dual<T> operator+(double c, const Dual<T>& x) {
  return x + c;
}
template <class T>
Dual<T> operator-(const Dual<T>& x, double c) {
  return {x.a - T(c), x.b};
}
template <class T>
Dual<T> operator-(double c, const Dual<T>& x) {
  return {T(c) - x.a, -x.b};
}
template <class T>
Dual<T> operator*(const Dual<T>& x, double c) {
  return {x.a * T(c), x.b * T(c)};
}
template <class T>
Dual<T> operator*(double c, const Dual<T>& x) {
  return x * c;
}
template <class T>
Dual<T> operator/(const Dual<T>& x, double c) {
  return {x.a / T(c), x.b / T(c)};
}
template <class T>
Dual<T> operator/(double c, const Dual<T>& x) {
  return Dual<T>(c) / x;
}

template <class T>
Dual<T>& operator+=(Dual<T>& x, const Dual<T>& y) {
  x = x + y;
  return x;
}
template <class T>
Dual<T>& operator-=(Dual<T>& x, const Dual<T>& y) {
  x = x - y;
  return x;
}
template <class T>
Dual<T>& operator*=(Dual<T>& x, const Dual<T>& y) {
  x = x * y;
  return x;
}

using std::sqrt;

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  T r = sqrt(x.a);
  return {r, x.b / (2.0 * r)};
}

/// Leading real value of an arbitrarily nested dual (used for pivoting
/// and domain checks, where only the point value matters).
inline double real_part(double x) { return x; }

template <class T>
double real_part(const Dual<T>& x) {
  return real_part(x.a);
}

}  // namespace spraylab

#endif
