#include "core/spray.hpp"

#include <cfloat>
#include <cmath>

namespace spraylab {

double CartanTensor::eval(const Vec& u, const Vec& v, const Vec& w) const {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double uv = u[i] * v[j];
      if (uv == 0.0) continue;
      for (int k = 0; k < n; ++k) s += uv * w[k] * C[(static_cast<size_t>(i) * n + j) * n + k];
    }
  return s;
}

double CartanTensor::eval_deriv(const Vec& u, const Vec& v, const Vec& w, const Vec& z) const {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double uv = u[i] * v[j];
      if (uv == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        double uvw = uv * w[k];
        if (uvw == 0.0) continue;
        for (int l = 0; l < n; ++l)
          s += uvw * z[l] * dC[((static_cast<size_t>(i) * n + j) * n + k) * n + l];
      }
    }
  return s;
}

SprayField::SprayField(const LieAlgebra& g, SprayVariant v) : g_(g), variant_(v) {}

SprayField SprayField::zero(const LieAlgebra& g) { return SprayField(g, SprayVariant::Zero); }

SprayField SprayField::riemannian(const LieAlgebra& g, const Mat& Q) {
  if (Q.rows != g.dim() || Q.cols != g.dim())
    throw ValidationError("riemannian: Q must be n*n with n the algebra dimension");
  for (int i = 0; i < Q.rows; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(Q(i, j) - Q(j, i)) > 1e-12 * (1.0 + std::abs(Q(i, j))))
        throw ValidationError("riemannian: Q must be symmetric");
  if (!is_positive_definite(Q))
    throw RegularityError("riemannian: Q must be positive definite");
  SprayField s(g, SprayVariant::Riemannian);
  s.Q_ = Q;
  return s;
}

SprayField SprayField::randers(const LieAlgebra& g, const Mat& Q, const Vec& b) {
  if (Q.rows != g.dim() || Q.cols != g.dim() || static_cast<int>(b.size()) != g.dim())
    throw ValidationError("randers: Q must be n*n and b length n");
  if (!is_positive_definite(Q))
    throw RegularityError("randers: Q must be positive definite");
  // |b|_Q^2 = b' Q^{-1} b must be < 1 for F > 0 and g_y > 0 away from 0.
  std::vector<double> qflat(Q.a);
  Vec x = solve_linear<double>(qflat, b);
  double nb = dot(b, x);
  if (nb >= 1.0)
    throw RegularityError("randers: |b|_Q = " + std::to_string(std::sqrt(nb)) +
                          " violates the strict bound |b|_Q < 1");
  SprayField s(g, SprayVariant::Randers);
  s.Q_ = Q;
  s.b_ = b;
  return s;
}

SprayField SprayField::quadratic(const LieAlgebra& g, const std::vector<double>& T) {
  const int n = g.dim();
  if (T.size() != static_cast<size_t>(n) * n * n)
    throw ValidationError("quadratic: coefficient tensor must have n^3 entries");
  SprayField s(g, SprayVariant::Quadratic);
  s.quad_ = T;
  return s;
}

SprayField SprayField::custom(const LieAlgebra& g, std::vector<PolyTerm> numerator,
                              std::vector<PolyTerm> denominator) {
  const int n = g.dim();
  auto check_terms = [n](const std::vector<PolyTerm>& terms, bool need_target,
                         const char* what) {
    for (const PolyTerm& t : terms) {
      if (static_cast<int>(t.exponents.size()) != n)
        throw ValidationError(std::string("custom ") + what +
                              ": exponent vector length must equal the dimension");
      for (int e : t.exponents)
        if (e < 0 || e > 16)
          throw ValidationError(std::string("custom ") + what +
                                ": exponents must lie in [0,16]");
      if (need_target && (t.target < 0 || t.target >= n))
        throw ValidationError("custom numerator: target component out of range");
      if (!std::isfinite(t.coeff))
        throw ValidationError(std::string("custom ") + what + ": coefficient is not finite");
    }
  };
  check_terms(numerator, true, "numerator");
  check_terms(denominator, false, "denominator");
  SprayField s(g, SprayVariant::Custom);
  s.poly_num_ = std::move(numerator);
  s.poly_den_ = std::move(denominator);
  return s;
}

const Mat& SprayField::metric_matrix() const {
  require_metric("metric_matrix");
  return Q_;
}

const Vec& SprayField::randers_drift() const {
  if (variant_ != SprayVariant::Randers)
    throw UnsupportedError("randers_drift: spray is not a randers variant");
  return b_;
}

void SprayField::set_y_floor(double floor) {
  if (!(floor > 0.0) || !std::isfinite(floor))
    throw ValidationError("y_floor must be positive and finite");
  y_floor_ = floor;
}

void SprayField::require_metric(const char* op) const {
  if (!is_metric())
    throw UnsupportedError(std::string(op) +
                           ": defined only for riemannian and randers variants");
}

Vec SprayField::eta(const Vec& y) const { return eta_t<double>(y); }

Vec SprayField::d_eta(const Vec& y, const Vec& w) const {
  if (mode_ == DerivativeMode::FiniteDifference && variant_ != SprayVariant::Zero)
    return d_eta_fd(y, w);
  return d_eta_t<double>(y, w);
}

Vec SprayField::connection(const Vec& y, const Vec& w) const {
  Vec de = d_eta(y, w);
  Vec br = g_.bracket(y, w);
  Vec out(de.size());
  for (size_t k = 0; k < out.size(); ++k) out[k] = 0.5 * de[k] - 0.5 * br[k];
  return out;
}

Vec SprayField::d_eta_fd(const Vec& y, const Vec& w) const {
  // Central difference in t of eta(y + t w), one Richardson level.
  double h = std::cbrt(DBL_EPSILON) * std::max(1.0, norm2(y));
  auto diff = [&](double step) {
    Vec p = eta(axpy(step, w, y));
    Vec m = eta(axpy(-step, w, y));
    Vec d(p.size());
    for (size_t k = 0; k < d.size(); ++k) d[k] = (p[k] - m[k]) / (2.0 * step);
    return d;
  };
  Vec dh = diff(h);
  Vec dh2 = diff(0.5 * h);
  Vec out(dh.size());
  for (size_t k = 0; k < out.size(); ++k) out[k] = (4.0 * dh2[k] - dh[k]) / 3.0;
  return out;
}

Mat SprayField::fundamental_tensor(const Vec& y) const {
  require_metric("fundamental_tensor");
  check_domain(y);
  const int n = g_.dim();
  Mat g(n, n);
  if (mode_ == DerivativeMode::FiniteDifference && variant_ == SprayVariant::Randers) {
    g = fundamental_fd(y);
  } else {
    std::vector<double> flat = fundamental_t<double>(y);
    g.a = flat;
  }
  if (!is_positive_definite(g))
    throw RegularityError("fundamental tensor lost positive definiteness at this y");
  return g;
}

Mat SprayField::fundamental_fd(const Vec& y) const {
  const int n = g_.dim();
  double h = std::pow(DBL_EPSILON, 0.25) * std::max(1.0, norm2(y));
  auto f2 = [&](const Vec& p) { return squared_norm_t<double>(p); };
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Vec ei(n, 0.0), ej(n, 0.0);
      ei[i] = 1.0;
      ej[j] = 1.0;
      auto second = [&](double step) {
        Vec pp = axpy(step, ej, axpy(step, ei, y));
        Vec pm = axpy(-step, ej, axpy(step, ei, y));
        Vec mp = axpy(step, ej, axpy(-step, ei, y));
        Vec mm = axpy(-step, ej, axpy(-step, ei, y));
        return (f2(pp) - f2(pm) - f2(mp) + f2(mm)) / (4.0 * step * step);
      };
      double d = (4.0 * second(0.5 * h) - second(h)) / 3.0;
      g(i, j) = 0.5 * d;
      g(j, i) = 0.5 * d;
    }
  return g;
}

CartanTensor SprayField::cartan_tensor(const Vec& y) const {
  require_metric("cartan_tensor");
  check_domain(y);
  if (mode_ == DerivativeMode::FiniteDifference && variant_ == SprayVariant::Randers)
    return cartan_fd(y);
  const int n = g_.dim();
  CartanTensor ct;
  ct.n = n;
  ct.C.assign(static_cast<size_t>(n) * n * n, 0.0);
  ct.dC.assign(static_cast<size_t>(n) * n * n * n, 0.0);
  using D3 = Dual<Dual<Dual<double>>>;
  using D4 = Dual<Dual<Dual<Dual<double>>>>;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        VecT<D3> yy(n);
        for (int m = 0; m < n; ++m) {
          Dual<double> lvl1(y[m], k == m ? 1.0 : 0.0);
          Dual<Dual<double>> lvl2(lvl1, Dual<double>(j == m ? 1.0 : 0.0));
          yy[m] = D3(lvl2, Dual<Dual<double>>(Dual<double>(i == m ? 1.0 : 0.0)));
        }
        double cijk = 0.25 * squared_norm_t<D3>(yy).b.b.b;
        int idx[3] = {i, j, k};
        int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (auto& p : perms)
          ct.C[(static_cast<size_t>(idx[p[0]]) * n + idx[p[1]]) * n + idx[p[2]]] = cijk;
      }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          VecT<D4> yy(n);
          for (int m = 0; m < n; ++m) {
            Dual<double> lvl1(y[m], l == m ? 1.0 : 0.0);
            Dual<Dual<double>> lvl2(lvl1, Dual<double>(k == m ? 1.0 : 0.0));
            Dual<Dual<Dual<double>>> lvl3(lvl2,
                                          Dual<Dual<double>>(Dual<double>(j == m ? 1.0 : 0.0)));
            yy[m] = D4(lvl3, Dual<Dual<Dual<double>>>(
                                 Dual<Dual<double>>(Dual<double>(i == m ? 1.0 : 0.0))));
          }
          double dijk = 0.25 * squared_norm_t<D4>(yy).b.b.b.b;
          int idx[3] = {i, j, k};
          int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
          for (auto& p : perms)
            ct.dC[((static_cast<size_t>(idx[p[0]]) * n + idx[p[1]]) * n + idx[p[2]]) * n + l] =
                dijk;
        }
  return ct;
}

CartanTensor SprayField::cartan_fd(const Vec& y) const {
  const int n = g_.dim();
  CartanTensor ct;
  ct.n = n;
  ct.C.assign(static_cast<size_t>(n) * n * n, 0.0);
  ct.dC.assign(static_cast<size_t>(n) * n * n * n, 0.0);
  auto f2 = [&](const Vec& p) { return squared_norm_t<double>(p); };
  double scale = std::max(1.0, norm2(y));
  double h3 = std::pow(DBL_EPSILON, 1.0 / 5.0) * scale;
  auto third = [&](int i, int j, int k, const Vec& base, double h) {
    Vec ei(n, 0.0), ej(n, 0.0), ek(n, 0.0);
    ei[i] = 1.0;
    ej[j] = 1.0;
    ek[k] = 1.0;
    double s = 0.0;
    for (int si = -1; si <= 1; si += 2)
      for (int sj = -1; sj <= 1; sj += 2)
        for (int sk = -1; sk <= 1; sk += 2) {
          Vec p = axpy(sk * h, ek, axpy(sj * h, ej, axpy(si * h, ei, base)));
          s += si * sj * sk * f2(p);
        }
    return s / (8.0 * h * h * h);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double d = (4.0 * third(i, j, k, y, 0.5 * h3) - third(i, j, k, y, h3)) / 3.0;
        ct.C[(static_cast<size_t>(i) * n + j) * n + k] = 0.25 * d;
      }
  double h4 = std::pow(DBL_EPSILON, 1.0 / 6.0) * scale;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Vec el(n, 0.0);
          el[l] = 1.0;
          auto cal = [&](double step) {
            Vec p = axpy(step, el, y);
            Vec m = axpy(-step, el, y);
            return (third(i, j, k, p, h4) - third(i, j, k, m, h4)) / (2.0 * step);
          };
          double d = (4.0 * cal(0.5 * h4) - cal(h4)) / 3.0;
          ct.dC[((static_cast<size_t>(i) * n + j) * n + k) * n + l] = 0.25 * d;
        }
  return ct;
}

double SprayField::finsler_norm(const Vec& y) const {
  require_metric("finsler_norm");
  check_domain(y);
  return std::sqrt(squared_norm_t<double>(y));
}

double SprayField::metric_eval(const Vec& y, const Vec& u, const Vec& v) const {
  Mat g = fundamental_tensor(y);
  return dot(u, mat_vec(g, v));
}

}  // namespace spraylab
