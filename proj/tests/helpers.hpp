// Small shared conveniences for the unit tests.

#ifndef SPRAYLAB_TESTS_HELPERS_HPP
#define SPRAYLAB_TESTS_HELPERS_HPP

#include <algorithm>
#include <cmath>

#include "core/integrate.hpp"
#include "core/types.hpp"

namespace testutil {

inline spraylab::Mat identity(int n) { return spraylab::Mat::identity(n); }

inline spraylab::Mat diag(const spraylab::Vec& d) {
  spraylab::Mat q(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < q.rows; ++i) q(i, i) = d[static_cast<size_t>(i)];
  return q;
}

inline double quad(const spraylab::Mat& q, const spraylab::Vec& u, const spraylab::Vec& v) {
  double s = 0.0;
  for (int i = 0; i < q.rows; ++i)
    for (int j = 0; j < q.cols; ++j)
      s += u[static_cast<size_t>(i)] * q(i, j) * v[static_cast<size_t>(j)];
  return s;
}

inline double max_abs(const spraylab::Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

inline double max_abs_diff(const spraylab::Vec& a, const spraylab::Vec& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

inline double mat_diff(const spraylab::Mat& a, const spraylab::Mat& b) {
  double m = 0.0;
  for (size_t k = 0; k < a.a.size(); ++k) m = std::max(m, std::fabs(a.a[k] - b.a[k]));
  return m;
}

inline spraylab::IntegratorConfig tight() {
  spraylab::IntegratorConfig cfg;
  cfg.abs_tol = cfg.rel_tol = 1e-12;
  return cfg;
}

}  // namespace testutil

#endif
