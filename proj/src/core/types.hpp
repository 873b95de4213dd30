#ifndef SPRAYLAB_CORE_TYPES_HPP
#define SPRAYLAB_CORE_TYPES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace spraylab {

using Vec = std::vector<double>;

template <class T>
using VecT = std::vector<T>;

/// Dense row-major matrix, small sizes only.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

/// Base for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid arguments or inconsistent input data.
struct ValidationError : Error {
  using Error::Error;
};

/// Evaluation requested outside the admissible domain (e.g. too close to 0).
struct DomainError : Error {
  using Error::Error;
};

/// A required positive-definiteness or regularity condition failed.
struct RegularityError : Error {
  using Error::Error;
};

/// Operation is not defined for the given model variant.
struct UnsupportedError : Error {
  using Error::Error;
};

/// Name not found in a catalog.
struct LookupError : Error {
  using Error::Error;
};

/// A configured combinatorial or size cap was exceeded.
struct CapacityError : Error {
  using Error::Error;
};

/// Time stepping failed (step size underflow or step budget exhausted).
struct IntegrationError : Error {
  using Error::Error;
};

inline double norm2(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double norm_inf(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline Vec axpy(double a, const Vec& x, const Vec& y) {
  Vec r(y);
  for (size_t i = 0; i < x.size(); ++i) r[i] += a * x[i];
  return r;
}

inline Vec scaled(const Vec& x, double a) {
  Vec r(x);
  for (double& v : r) v *= a;
  return r;
}

inline Vec sub(const Vec& x, const Vec& y) {
  Vec r(x);
  for (size_t i = 0; i < y.size(); ++i) r[i] -= y[i];
  return r;
}

inline Vec add(const Vec& x, const Vec& y) {
  Vec r(x);
  for (size_t i = 0; i < y.size(); ++i) r[i] += y[i];
  return r;
}

}  // namespace spraylab

#endif
