#ifndef SPRAYLAB_CORE_LINALG_HPP
#define SPRAYLAB_CORE_LINALG_HPP

#include <cmath>
#include <vector>

#include "core/dual.hpp"
#include "core/types.hpp"

namespace spraylab {

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// A is n*n row-major and is passed by value (it gets destroyed).
/// Works for nested dual scalars; pivot choice looks at leading real
/// parts only, which is the standard rule for perturbation types.
template <class T>
VecT<T> solve_linear(VecT<T> A, VecT<T> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(real_part(A[static_cast<size_t>(col) * n + col]));
    for (int r = col + 1; r < n; ++r) {
      double cand = std::abs(real_part(A[static_cast<size_t>(r) * n + col]));
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best < 1e-300) throw RegularityError("linear solve: matrix is numerically singular");
    if (piv != col) {
      for (int k = col; k < n; ++k)
        std::swap(A[static_cast<size_t>(piv) * n + k], A[static_cast<size_t>(col) * n + k]);
      std::swap(b[piv], b[col]);
    }
    T inv = T(1.0) / A[static_cast<size_t>(col) * n + col];
    for (int r = col + 1; r < n; ++r) {
      T f = A[static_cast<size_t>(r) * n + col] * inv;
      for (int k = col; k < n; ++k)
        A[static_cast<size_t>(r) * n + k] =
            A[static_cast<size_t>(r) * n + k] - f * A[static_cast<size_t>(col) * n + k];
      b[r] = b[r] - f * b[col];
    }
  }
  VecT<T> x(n, T(0.0));
  for (int r = n - 1; r >= 0; --r) {
    T s = b[r];
    for (int k = r + 1; k < n; ++k) s = s - A[static_cast<size_t>(r) * n + k] * x[k];
    x[r] = s / A[static_cast<size_t>(r) * n + r];
  }
  return x;
}

/// True when the symmetric matrix is positive definite (Cholesky succeeds).
bool is_positive_definite(const Mat& S, double tol = 0.0);

Mat mat_mul(const Mat& A, const Mat& B);
Vec mat_vec(const Mat& A, const Vec& x);
Mat mat_add(const Mat& A, const Mat& B);
Mat mat_scaled(const Mat& A, double s);
double mat_norm_inf(const Mat& A);   // max absolute entry
double mat_norm_one(const Mat& A);   // max column sum

/// Matrix exponential by scaling and squaring with a Taylor kernel.
/// Accurate to machine precision for the moderate norms used here.
Mat mat_exp(const Mat& A);

}  // namespace spraylab

#endif
