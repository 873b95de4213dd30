#ifndef SPRAYLAB_CORE_CURVATURE_HPP
#define SPRAYLAB_CORE_CURVATURE_HPP

#include "core/spray.hpp"
#include "core/transport.hpp"
#include "core/types.hpp"

namespace spraylab {

/// Derivative of N(., w) at y in the direction eta(y).
Vec dn_direction(const SprayField& s, const Vec& y, const Vec& w);

/// Curvature operator R_y(w) assembled algebraically from the connection:
/// R_y(w) = DN(eta; y, w) - N(y, N(y,w)) + N(y, [y,w]) - [y, N(y,w)].
Vec riemann(const SprayField& s, const Vec& y, const Vec& w);

/// Curvature by differentiating parallel vector fields along the geodesic
/// through y0: an independent route used to cross-check `riemann`.
/// Finite differences in t use a 5-point stencil of width proportional
/// to max(1, |t_probe|).
Vec riemann_via_transport(const SprayField& s, const Vec& y0, const Vec& w0, double t_probe,
                          const IntegratorConfig& cfg);

/// Flag curvature K(y, w) for metric variants.
double flag_curvature(const SprayField& s, const Vec& y, const Vec& w);

/// S-curvature S(y) = Tr N(y, .) + Tr ad(y).
double s_curvature(const SprayField& s, const Vec& y);

/// Landsberg quantity L_y(w,w,w) from the Cartan tensor and connection.
double landsberg(const SprayField& s, const Vec& y, const Vec& w);

/// Landsberg quantity as the t-derivative at 0 of C_{y(t)}(w(t),w(t),w(t))
/// along the geodesic through y0 with w linearly parallel; central
/// difference with step 1e-3.
double landsberg_via_transport(const SprayField& s, const Vec& y0, const Vec& w0,
                               const IntegratorConfig& cfg);

}  // namespace spraylab

#endif
