#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

double qform(const Mat& Q, const Vec& x, const Vec& y) {
  double s = 0.0;
  for (int i = 0; i < Q.rows; ++i)
    for (int j = 0; j < Q.cols; ++j) s += x[static_cast<size_t>(i)] * Q(i, j) * y[static_cast<size_t>(j)];
  return s;
}

}  // namespace

Vec solve(Mat A, Vec b) {
  const int n = A.rows;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(A(r, col)) > std::fabs(A(pivot, col))) pivot = r;
    if (std::fabs(A(pivot, col)) < 1e-14) throw std::runtime_error("oracle solve: singular");
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(A(pivot, c), A(col, c));
      std::swap(b[static_cast<size_t>(pivot)], b[static_cast<size_t>(col)]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = A(r, col) / A(col, col);
      for (int c = col; c < n; ++c) A(r, c) -= f * A(col, c);
      b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
    }
  }
  Vec x(static_cast<size_t>(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[static_cast<size_t>(r)];
    for (int c = r + 1; c < n; ++c) s -= A(r, c) * x[static_cast<size_t>(c)];
    x[static_cast<size_t>(r)] = s / A(r, r);
  }
  return x;
}

Vec covariant(const LieAlgebra& g, const Mat& Q, const Vec& x, const Vec& y) {
  const int n = g.dim();
  Vec rhs(static_cast<size_t>(n), 0.0);
  Vec xy = g.bracket(x, y);
  for (int k = 0; k < n; ++k) {
    Vec ek(static_cast<size_t>(n), 0.0);
    ek[static_cast<size_t>(k)] = 1.0;
    double t1 = qform(Q, xy, ek);
    double t2 = qform(Q, g.bracket(y, ek), x);
    double t3 = qform(Q, g.bracket(ek, x), y);
    rhs[static_cast<size_t>(k)] = 0.5 * (t1 - t2 + t3);
  }
  return solve(Q, rhs);
}

Vec curvature_tensor(const LieAlgebra& g, const Mat& Q, const Vec& u, const Vec& v,
                     const Vec& w) {
  Vec a = covariant(g, Q, u, covariant(g, Q, v, w));
  Vec b = covariant(g, Q, v, covariant(g, Q, u, w));
  Vec c = covariant(g, Q, g.bracket(u, v), w);
  return spraylab::sub(spraylab::sub(a, b), c);
}

double sectional(const LieAlgebra& g, const Mat& Q, const Vec& u, const Vec& v) {
  Vec r = curvature_tensor(g, Q, u, v, v);
  double num = qform(Q, r, u);
  double den = qform(Q, u, u) * qform(Q, v, v) - qform(Q, u, v) * qform(Q, u, v);
  return num / den;
}

Mat randers_fundamental(const Mat& Q, const Vec& b, const Vec& y) {
  const int n = Q.rows;
  double alpha = std::sqrt(qform(Q, y, y));
  Vec ell(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ell[static_cast<size_t>(i)] += Q(i, j) * y[static_cast<size_t>(j)] / alpha;
  double beta = 0.0;
  for (int i = 0; i < n; ++i) beta += b[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
  double f = alpha + beta;
  Mat gy(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double li = ell[static_cast<size_t>(i)], lj = ell[static_cast<size_t>(j)];
      gy(i, j) = (f / alpha) * (Q(i, j) - li * lj) +
                 (li + b[static_cast<size_t>(i)]) * (lj + b[static_cast<size_t>(j)]);
    }
  return gy;
}

Vec riemannian_eta(const LieAlgebra& g, const Mat& Q, const Vec& y) {
  const int n = g.dim();
  Mat ad = g.ad(y);
  Vec qy(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) qy[static_cast<size_t>(i)] += Q(i, j) * y[static_cast<size_t>(j)];
  Vec rhs(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rhs[static_cast<size_t>(i)] -= ad(j, i) * qy[static_cast<size_t>(j)];
  return solve(Q, rhs);
}

double randers_cartan_fd(const Mat& Q, const Vec& b, const Vec& y, const Vec& u, const Vec& v,
                         const Vec& w, double h) {
  Vec yp = spraylab::axpy(h, w, y);
  Vec ym = spraylab::axpy(-h, w, y);
  Mat gp = randers_fundamental(Q, b, yp);
  Mat gm = randers_fundamental(Q, b, ym);
  double s = 0.0;
  for (int i = 0; i < Q.rows; ++i)
    for (int j = 0; j < Q.cols; ++j)
      s += u[static_cast<size_t>(i)] * (gp(i, j) - gm(i, j)) * v[static_cast<size_t>(j)];
  return 0.5 * s / (2.0 * h);
}

Vec rotate(const Vec& axis, double angle, const Vec& v) {
  double norm = spraylab::norm2(axis);
  if (norm == 0.0) return v;
  Vec n = spraylab::scaled(axis, 1.0 / norm);
  Vec cross = {n[1] * v[2] - n[2] * v[1], n[2] * v[0] - n[0] * v[2], n[0] * v[1] - n[1] * v[0]};
  double ndotv = spraylab::dot(n, v);
  Vec out(3);
  double c = std::cos(angle), s = std::sin(angle);
  for (int i = 0; i < 3; ++i)
    out[static_cast<size_t>(i)] = v[static_cast<size_t>(i)] * c +
                                  cross[static_cast<size_t>(i)] * s +
                                  n[static_cast<size_t>(i)] * ndotv * (1.0 - c);
  return out;
}

Vec su2_parallel(const Vec& y0, const Vec& w0, double t) {
  return rotate(y0, -0.5 * t * spraylab::norm2(y0), w0);
}

Mat exp_su2(const Vec& w, double t) {
  // Quaternion basis (1, i, j, k); L_u is left multiplication by the pure
  // quaternion with vector part u.
  Mat L(4, 4);
  double w1 = w[0], w2 = w[1], w3 = w[2];
  L(0, 1) = -w1; L(1, 0) = w1; L(2, 3) = -w1; L(3, 2) = w1;
  L(0, 2) = -w2; L(2, 0) = w2; L(1, 3) = w2;  L(3, 1) = -w2;
  L(0, 3) = -w3; L(3, 0) = w3; L(1, 2) = -w3; L(2, 1) = w3;
  double wn = spraylab::norm2(w);
  double half = 0.5 * t * wn;
  Mat out = Mat::identity(4);
  double c = std::cos(half);
  double s = (wn == 0.0) ? 0.5 * t : std::sin(half) / wn;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = c * (i == j ? 1.0 : 0.0) + s * L(i, j);
  return out;
}

Mat exp_nilpotent3(const Mat& X) {
  const int n = X.rows;
  Mat X2(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += X(i, k) * X(k, j);
      X2(i, j) = s;
    }
  Mat out = Mat::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) += X(i, j) + 0.5 * X2(i, j);
  return out;
}

Mat exp_sl2(const Mat& X) {
  double det = X(0, 0) * X(1, 1) - X(0, 1) * X(1, 0);
  double delta = -det;  // X^2 = delta I for traceless X
  double c, s;
  if (delta > 1e-14) {
    double r = std::sqrt(delta);
    c = std::cosh(r);
    s = std::sinh(r) / r;
  } else if (delta < -1e-14) {
    double r = std::sqrt(-delta);
    c = std::cos(r);
    s = std::sin(r) / r;
  } else {
    c = 1.0;
    s = 1.0;
  }
  Mat out(2, 2);
  out(0, 0) = c + s * X(0, 0);
  out(0, 1) = s * X(0, 1);
  out(1, 0) = s * X(1, 0);
  out(1, 1) = c + s * X(1, 1);
  return out;
}

Mat exp_e2(const Vec& y) {
  double th = y[0], a = y[1], b = y[2];
  Mat out = Mat::identity(3);
  double c = std::cos(th), s = std::sin(th);
  out(0, 0) = c; out(0, 1) = -s;
  out(1, 0) = s; out(1, 1) = c;
  if (std::fabs(th) > 1e-14) {
    out(0, 2) = (s * a - (1.0 - c) * b) / th;
    out(1, 2) = ((1.0 - c) * a + s * b) / th;
  } else {
    out(0, 2) = a;
    out(1, 2) = b;
  }
  return out;
}

Mat exp_solvable2(double a, double b) {
  Mat out = Mat::identity(2);
  out(0, 0) = std::exp(a);
  out(0, 1) = (std::fabs(a) > 1e-14) ? b * (std::exp(a) - 1.0) / a : b;
  out(1, 1) = 1.0;
  return out;
}

}  // namespace oracle
