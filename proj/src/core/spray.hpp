#ifndef SPRAYLAB_CORE_SPRAY_HPP
#define SPRAYLAB_CORE_SPRAY_HPP

#include <memory>
#include <string>
#include <vector>

#include "core/algebra.hpp"
#include "core/dual.hpp"
#include "core/linalg.hpp"
#include "core/types.hpp"

namespace spraylab {

enum class SprayVariant { Zero, Riemannian, Randers, Quadratic, Custom };

enum class DerivativeMode { Dual, FiniteDifference };

/// One monomial of a custom evaluator: coeff * prod_i y_i^exponents[i],
/// contributing to output component `target` (ignored for denominators).
struct PolyTerm {
  std::vector<int> exponents;
  int target = 0;
  double coeff = 0.0;
};

/// Symmetric trilinear array C_y together with its derivative in y.
/// C is n^3 (indices i,j,k), dC is n^4 (indices i,j,k and the y-direction l).
struct CartanTensor {
  int n = 0;
  std::vector<double> C;
  std::vector<double> dC;

  double eval(const Vec& u, const Vec& v, const Vec& w) const;
  /// Directional derivative C'_y(u,v,w; z).
  double eval_deriv(const Vec& u, const Vec& v, const Vec& w, const Vec& z) const;
};

/// A left-invariant spray presented at the algebra level: a positive
/// 2-homogeneous vector field on g minus the origin, together with the
/// induced connection operator N(y,w).
///
/// Instances are immutable after construction apart from two knobs
/// (domain floor and derivative mode); all evaluation is const and
/// thread-safe.
class SprayField {
 public:
  static SprayField zero(const LieAlgebra& g);
  /// Metric spray of a left-invariant Riemannian metric Q (n*n, SPD).
  static SprayField riemannian(const LieAlgebra& g, const Mat& Q);
  /// Randers metric F = sqrt(y'Qy) + b'y; requires |b|_Q < 1 strictly.
  static SprayField randers(const LieAlgebra& g, const Mat& Q, const Vec& b);
  /// eta^k(y) = sum_ij T[(i*n+j)*n+k] y_i y_j.
  static SprayField quadratic(const LieAlgebra& g, const std::vector<double>& T);
  /// Polynomial (or rational, when a denominator is given) evaluator.
  static SprayField custom(const LieAlgebra& g, std::vector<PolyTerm> numerator,
                           std::vector<PolyTerm> denominator = {});

  const LieAlgebra& algebra() const { return g_; }
  SprayVariant variant() const { return variant_; }
  bool is_metric() const {
    return variant_ == SprayVariant::Riemannian || variant_ == SprayVariant::Randers;
  }
  const Mat& metric_matrix() const;  // Q of a metric variant
  const Vec& randers_drift() const;  // b of the randers variant

  double y_floor() const { return y_floor_; }
  void set_y_floor(double floor);
  DerivativeMode derivative_mode() const { return mode_; }
  void set_derivative_mode(DerivativeMode m) { mode_ = m; }

  /// Spray vector field eta(y).
  Vec eta(const Vec& y) const;
  /// Directional derivative of eta at y in direction w.
  Vec d_eta(const Vec& y, const Vec& w) const;
  /// Connection operator N(y,w) = 1/2 d_eta(y,w) - 1/2 [y,w].
  Vec connection(const Vec& y, const Vec& w) const;
  /// Fundamental tensor g_y (metric variants only).
  Mat fundamental_tensor(const Vec& y) const;
  /// Cartan tensor and its y-derivative (metric variants only).
  CartanTensor cartan_tensor(const Vec& y) const;
  /// F(y) for metric variants.
  double finsler_norm(const Vec& y) const;
  /// g_y(u, v) for metric variants.
  double metric_eval(const Vec& y, const Vec& u, const Vec& v) const;

  // ---- scalar-generic evaluation core -------------------------------
  // These power every nested-derivative path in the library.  T is
  // double or an arbitrarily nested Dual<...> around double.

  template <class T>
  void check_domain(const VecT<T>& y) const {
    if (static_cast<int>(y.size()) != g_.dim())
      throw ValidationError("spray evaluation: vector has dimension " +
                            std::to_string(y.size()) + ", algebra has " +
                            std::to_string(g_.dim()));
    double s = 0.0;
    for (const T& v : y) {
      double r = real_part(v);
      s += r * r;
    }
    if (std::sqrt(s) < y_floor_)
      throw DomainError("spray evaluation inside the excluded ball around 0 (|y| = " +
                        std::to_string(std::sqrt(s)) + " < floor " + std::to_string(y_floor_) +
                        ")");
  }

  /// Squared Finsler norm, metric variants only.
  template <class T>
  T squared_norm_t(const VecT<T>& y) const {
    const int n = g_.dim();
    T quad(0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double q = Q_(i, j);
        if (q != 0.0) quad += (y[i] * y[j]) * q;
      }
    if (variant_ == SprayVariant::Riemannian) return quad;
    T beta(0.0);
    for (int i = 0; i < n; ++i)
      if (b_[i] != 0.0) beta += y[i] * b_[i];
    T f = sqrt(quad) + beta;
    return f * f;
  }

  /// Fundamental tensor entries as flat n*n in scalar type T.
  template <class T>
  std::vector<T> fundamental_t(const VecT<T>& y) const {
    const int n = g_.dim();
    std::vector<T> g(static_cast<size_t>(n) * n, T(0.0));
    if (variant_ == SprayVariant::Riemannian) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[static_cast<size_t>(i) * n + j] = T(Q_(i, j));
      return g;
    }
    using D2 = Dual<Dual<T>>;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        VecT<D2> yy(n);
        for (int k = 0; k < n; ++k) {
          Dual<T> value(y[k], T(j == k ? 1.0 : 0.0));
          Dual<T> outer(T(i == k ? 1.0 : 0.0), T(0.0));
          yy[k] = D2(value, outer);
        }
        T gij = T(0.5) * squared_norm_t<D2>(yy).b.b;
        g[static_cast<size_t>(i) * n + j] = gij;
        g[static_cast<size_t>(j) * n + i] = gij;
      }
    return g;
  }

  template <class T>
  VecT<T> eta_t(const VecT<T>& y) const {
    check_domain(y);
    const int n = g_.dim();
    switch (variant_) {
      case SprayVariant::Zero:
        return VecT<T>(n, T(0.0));
      case SprayVariant::Quadratic: {
        VecT<T> out(n, T(0.0));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            T prod = y[i] * y[j];
            for (int k = 0; k < n; ++k) {
              double t = quad_[(static_cast<size_t>(i) * n + j) * n + k];
              if (t != 0.0) out[k] += prod * t;
            }
          }
        return out;
      }
      case SprayVariant::Custom: {
        VecT<T> out(n, T(0.0));
        for (const PolyTerm& term : poly_num_) {
          T mono(term.coeff);
          for (int i = 0; i < n; ++i)
            for (int p = 0; p < term.exponents[i]; ++p) mono *= y[i];
          out[term.target] += mono;
        }
        if (!poly_den_.empty()) {
          T den(0.0);
          for (const PolyTerm& term : poly_den_) {
            T mono(term.coeff);
            for (int i = 0; i < n; ++i)
              for (int p = 0; p < term.exponents[i]; ++p) mono *= y[i];
            den += mono;
          }
          if (std::abs(real_part(den)) < 1e-300)
            throw DomainError("custom evaluator denominator vanishes at the requested point");
          for (int k = 0; k < n; ++k) out[k] = out[k] / den;
        }
        return out;
      }
      case SprayVariant::Riemannian:
      case SprayVariant::Randers: {
        // Defining relation: g_y(eta(y), u) = g_y(y, [u, y]) for all u.
        std::vector<T> g = fundamental_t<T>(y);
        VecT<T> rhs(n, T(0.0));
        for (int i = 0; i < n; ++i) {
          VecT<T> ei(n, T(0.0));
          ei[i] = T(1.0);
          VecT<T> br = g_.bracket(ei, y);
          T s(0.0);
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) s += y[a] * g[static_cast<size_t>(a) * n + b] * br[b];
          rhs[i] = s;
        }
        return solve_linear<T>(g, rhs);
      }
    }
    throw Error("unreachable spray variant");
  }

  template <class T>
  VecT<T> d_eta_t(const VecT<T>& y, const VecT<T>& w) const {
    const int n = g_.dim();
    if (static_cast<int>(w.size()) != n)
      throw ValidationError("spray derivative: direction has dimension " +
                            std::to_string(w.size()) + ", algebra has " + std::to_string(n));
    if (variant_ == SprayVariant::Zero) {
      check_domain(y);
      return VecT<T>(n, T(0.0));
    }
    VecT<Dual<T>> yy(n);
    for (int k = 0; k < n; ++k) yy[k] = Dual<T>(y[k], w[k]);
    VecT<Dual<T>> e = eta_t<Dual<T>>(yy);
    VecT<T> out(n);
    for (int k = 0; k < n; ++k) out[k] = e[k].b;
    return out;
  }

  template <class T>
  VecT<T> connection_t(const VecT<T>& y, const VecT<T>& w) const {
    const int n = g_.dim();
    VecT<T> de = d_eta_t<T>(y, w);
    VecT<T> br = g_.bracket(y, w);
    VecT<T> out(n);
    for (int k = 0; k < n; ++k) out[k] = T(0.5) * de[k] - T(0.5) * br[k];
    return out;
  }

 private:
  SprayField(const LieAlgebra& g, SprayVariant v);

  Vec d_eta_fd(const Vec& y, const Vec& w) const;
  Mat fundamental_fd(const Vec& y) const;
  CartanTensor cartan_fd(const Vec& y) const;
  void require_metric(const char* op) const;

  LieAlgebra g_;
  SprayVariant variant_;
  Mat Q_;                        // metric variants
  Vec b_;                        // randers
  std::vector<double> quad_;     // quadratic coefficients, n*n*n
  std::vector<PolyTerm> poly_num_;
  std::vector<PolyTerm> poly_den_;
  double y_floor_ = 1e-8;
  DerivativeMode mode_ = DerivativeMode::Dual;
};

}  // namespace spraylab

#endif
