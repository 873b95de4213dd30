#include "core/linalg.hpp"

namespace spraylab {

bool is_positive_definite(const Mat& S, double tol) {
  const int n = S.rows;
  Mat L(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = S(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      if (i == j) {
        if (s <= tol) return false;
        L(i, i) = std::sqrt(s);
      } else {
        L(i, j) = s / L(j, j);
      }
    }
  }
  return true;
}

Mat mat_mul(const Mat& A, const Mat& B) {
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      double aik = A(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < B.cols; ++j) C(i, j) += aik * B(k, j);
    }
  return C;
}

Vec mat_vec(const Mat& A, const Vec& x) {
  Vec y(A.rows, 0.0);
  for (int i = 0; i < A.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < A.cols; ++j) s += A(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Mat mat_add(const Mat& A, const Mat& B) {
  Mat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
  return C;
}

Mat mat_scaled(const Mat& A, double s) {
  Mat C = A;
  for (double& v : C.a) v *= s;
  return C;
}

double mat_norm_inf(const Mat& A) {
  double m = 0.0;
  for (double v : A.a) m = std::max(m, std::abs(v));
  return m;
}

double mat_norm_one(const Mat& A) {
  double m = 0.0;
  for (int j = 0; j < A.cols; ++j) {
    double s = 0.0;
    for (int i = 0; i < A.rows; ++i) s += std::abs(A(i, j));
    m = std::max(m, s);
  }
  return m;
}

Mat mat_exp(const Mat& A) {
  const int n = A.rows;
  double norm = mat_norm_one(A);
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  // Taylor series of exp(A * scale); with the scaled norm at most 1/2 the
  // truncation error after 24 terms is far below machine precision.
  Mat S = mat_scaled(A, scale);
  Mat term = Mat::identity(n);
  Mat sum = Mat::identity(n);
  for (int k = 1; k <= 24; ++k) {
    term = mat_scaled(mat_mul(term, S), 1.0 / k);
    sum = mat_add(sum, term);
  }
  for (int s = 0; s < squarings; ++s) sum = mat_mul(sum, sum);
  return sum;
}

}  // namespace spraylab
