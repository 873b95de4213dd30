#ifndef SPRAYLAB_CORE_ALGEBRA_HPP
#define SPRAYLAB_CORE_ALGEBRA_HPP

#include <string>
#include <vector>

#include "core/types.hpp"

namespace spraylab {

/// Finite-dimensional real Lie algebra given by structure constants.
///
/// Storage convention: c(i,j,k) is the coefficient of basis vector e_k in
/// [e_i, e_j].  Antisymmetry in (i,j) holds by construction; the Jacobi
/// identity is validated at construction time.
class LieAlgebra {
 public:
  /// Builds from a full n*n*n tensor (row-major over (i,j,k)).  The input
  /// is antisymmetrized in (i,j); a Jacobi defect above `jacobi_tol`
  /// rejects the input.
  static LieAlgebra from_structure_constants(int dim, const std::vector<double>& c,
                                             double jacobi_tol = 1e-8);

  /// Fetches a named algebra with exact rational structure constants.
  /// Names: "abelian_<k>", "heisenberg3", "su2", "sl2r", "e2", "solvable2".
  static LieAlgebra catalog(const std::string& name);

  static std::vector<std::string> catalog_names();

  int dim() const { return n_; }
  const std::string& name() const { return name_; }

  double c(int i, int j, int k) const {
    return c_[(static_cast<size_t>(i) * n_ + j) * n_ + k];
  }

  /// [x, y] for any scalar type that supports ring arithmetic with double.
  template <class T>
  VecT<T> bracket(const VecT<T>& x, const VecT<T>& y) const {
    VecT<T> z(n_, T(0.0));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        for (int k = 0; k < n_; ++k) {
          double cijk = c(i, j, k);
          if (cijk != 0.0) z[k] += (x[i] * y[j]) * cijk;
        }
      }
    return z;
  }

  /// Matrix of ad(x): w -> [x, w], row-major n*n.
  Mat ad(const Vec& x) const;

  /// Worst absolute residual of the Jacobi identity over all index triples.
  double jacobi_defect() const;

  /// Orthonormal basis of the center {z : [x, z] = 0 for all x}.
  /// Rank decisions use singular values relative to the largest one.
  std::vector<Vec> center(double tol = 1e-10) const;

  /// True when the symmetric form Q is ad-invariant:
  /// Q([x,y],z) + Q(y,[x,z]) = 0 over all basis triples.
  bool is_bi_invariant(const Mat& Q, double tol = 1e-12) const;

 private:
  LieAlgebra(int n, std::vector<double> c, std::string name);

  int n_;
  std::vector<double> c_;
  std::string name_;
};

}  // namespace spraylab

#endif
