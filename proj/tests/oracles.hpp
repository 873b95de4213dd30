// Independent reference implementations used to cross-check the library.
//
// Everything here is computed from first principles with its own small
// linear algebra: the Koszul formula for the Levi-Civita connection of a
// left-invariant metric, textbook curvature tensors, the closed-form
// Randers fundamental tensor, closed-form matrix exponentials for the
// catalog presentations, and the Rodrigues closed form for bi-invariant
// transport on su(2).  None of it calls into SprayField or the connection
// operator, so agreement with the library is meaningful evidence.

#ifndef SPRAYLAB_TESTS_ORACLES_HPP
#define SPRAYLAB_TESTS_ORACLES_HPP

#include "core/algebra.hpp"
#include "core/types.hpp"

namespace oracle {

using spraylab::LieAlgebra;
using spraylab::Mat;
using spraylab::Vec;

/// Solve A x = b by Gaussian elimination with partial pivoting (local
/// implementation, deliberately not the library's solver).
Vec solve(Mat A, Vec b);

/// Levi-Civita connection of the left-invariant metric with Gram matrix Q,
/// via the Koszul formula
///   2 Q(D_x y, z) = Q([x,y],z) - Q([y,z],x) + Q([z,x],y).
Vec covariant(const LieAlgebra& g, const Mat& Q, const Vec& x, const Vec& y);

/// Curvature tensor R(u,v)w = D_u D_v w - D_v D_u w - D_[u,v] w on
/// left-invariant fields.
Vec curvature_tensor(const LieAlgebra& g, const Mat& Q, const Vec& u, const Vec& v,
                     const Vec& w);

/// Sectional curvature of the plane spanned by u, v.
double sectional(const LieAlgebra& g, const Mat& Q, const Vec& u, const Vec& v);

/// Closed-form fundamental tensor of the Randers norm F = |y|_Q + <b,y>:
///   g_y = (F/a) (Q - l l^T) + (l + b)(l + b)^T,  a = |y|_Q,  l = Qy/a.
Mat randers_fundamental(const Mat& Q, const Vec& b, const Vec& y);

/// Closed-form spray vector of a left-invariant Riemannian metric:
/// eta(y) = -Q^{-1} ad_y^T Q y  (from g(eta(y),u) = g(y,[u,y])).
Vec riemannian_eta(const LieAlgebra& g, const Mat& Q, const Vec& y);

/// Cartan tensor of the Randers norm by central differences of the
/// closed-form fundamental tensor: C_y(u,v,w) = 1/2 d/ds g_{y+sw}(u,v)|_0.
double randers_cartan_fd(const Mat& Q, const Vec& b, const Vec& y, const Vec& u, const Vec& v,
                         const Vec& w, double h = 1e-5);

/// Rodrigues rotation of v about the axis through `axis` by `angle`.
Vec rotate(const Vec& axis, double angle, const Vec& v);

/// Closed-form linearly parallel field along the bi-invariant su(2)
/// geodesic with constant velocity y0 (metric Q = I):
///   w(t) = rotation of w0 about y0 by angle -t |y0| / 2.
Vec su2_parallel(const Vec& y0, const Vec& w0, double t);

/// exp(t rho(w)) for the quaternion left-multiplication presentation of
/// su(2) (rho(w) = L_w / 2, so (2 rho(w))^2 = -|w|^2 I).
Mat exp_su2(const Vec& w, double t);

/// exp(X) for nilpotent X with X^3 = 0 (Heisenberg presentation).
Mat exp_nilpotent3(const Mat& X);

/// exp(X) for traceless 2x2 X (sl(2,R) presentation).
Mat exp_sl2(const Mat& X);

/// exp of the planar-motion generator rho(y) = [[0,-y1,y2],[y1,0,y3],[0,0,0]]
/// (e(2) presentation: rotation angle y1, translation part (y2,y3)).
Mat exp_e2(const Vec& y);

/// exp of [[a,b],[0,0]] (solvable2 presentation).
Mat exp_solvable2(double a, double b);

}  // namespace oracle

#endif
