#ifndef SPRAYLAB_CORE_GROUP_REP_HPP
#define SPRAYLAB_CORE_GROUP_REP_HPP

#include <vector>

#include "core/algebra.hpp"
#include "core/spray.hpp"
#include "core/transport.hpp"
#include "core/types.hpp"

namespace spraylab {

/// A faithful matrix presentation rho of a Lie algebra, used to lift
/// algebra-level velocity curves to group-level matrix curves.
class MatrixRep {
 public:
  /// Built-in presentation for a catalog algebra (by the algebra's name).
  static MatrixRep catalog(const LieAlgebra& g);
  /// User-supplied generators rho[i], one m-by-m matrix per basis element.
  static MatrixRep create(const LieAlgebra& g, std::vector<Mat> generators);

  const LieAlgebra& algebra() const { return g_; }
  int matrix_size() const { return m_; }
  const Mat& generator(int i) const { return rho_[static_cast<std::size_t>(i)]; }

  /// rho(y) = sum_i y_i rho_i.
  Mat map(const Vec& y) const;

  /// Largest entry of rho([e_i,e_j]) - (rho_i rho_j - rho_j rho_i) over all
  /// pairs: zero (to round-off) iff rho is a homomorphism.
  double homomorphism_defect() const;

 private:
  MatrixRep(const LieAlgebra& g, int m, std::vector<Mat> rho);

  LieAlgebra g_;
  int m_;
  std::vector<Mat> rho_;
};

/// Matrix curve C(t) solving C' = C rho(y(t)), C(t_begin) = C0 (identity
/// when C0 is null), driven by the dense output of an integrated velocity
/// curve; sampled at the velocity trajectory's own nodes.
struct GroupCurve {
  std::vector<double> t;
  std::vector<Mat> C;
  TrajectoryStatus status = TrajectoryStatus::Complete;
};

GroupCurve reconstruct_curve(const MatrixRep& rep, const Trajectory& velocity,
                             const IntegratorConfig& cfg, const Mat* C0 = nullptr);

/// Exact endpoint of the group curve for a piecewise-constant velocity:
/// the ordered product of matrix exponentials exp(rho(w_k) dt_k).
Mat piecewise_endpoint(const MatrixRep& rep, const std::vector<LoopLeg>& legs);

/// Left-invariance check: reconstruct the geodesic group curve from y0
/// twice, from the identity and from a piecewise-constant prefix curve's
/// endpoint g0, and return max_t |g0 C_id(t) - C_g0(t)| over the nodes.
double left_invariance_residual(const MatrixRep& rep, const SprayField& s,
                                const std::vector<LoopLeg>& prefix, const Vec& y0, double t_end,
                                const IntegratorConfig& cfg);

}  // namespace spraylab

#endif
