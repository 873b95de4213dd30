/*
 * spraylab — left-invariant spray geometry on Lie groups, computed at the
 * Lie-algebra level.
 *
 * C interface to the shared library.  Every object is an opaque handle
 * created by a slb_*_create/catalog call and released by the matching
 * slb_*_free.  Fallible calls return slb_status; on any nonzero status the
 * thread-local message from slb_last_error() describes the failure.
 *
 * Vectors are length-dim arrays of double; matrices are row-major.
 * Structure constants and quadratic coefficients are flattened as
 * c[(i*dim + j)*dim + k].
 */

#ifndef SPRAYLAB_SPRAYLAB_H
#define SPRAYLAB_SPRAYLAB_H

#include <stddef.h>

#if defined(_WIN32)
#define SLB_API __declspec(dllexport)
#else
#define SLB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slb_status {
  SLB_OK = 0,
  SLB_ERR_VALIDATION = 1,  /* malformed input (sizes, ranges, parse errors) */
  SLB_ERR_DOMAIN = 2,      /* evaluation outside the spray's domain */
  SLB_ERR_REGULARITY = 3,  /* singular linear system / non-definite tensor */
  SLB_ERR_UNSUPPORTED = 4, /* operation undefined for this spray variant */
  SLB_ERR_LOOKUP = 5,      /* unknown catalog name */
  SLB_ERR_CAPACITY = 6,    /* word/step/depth budget exceeded */
  SLB_ERR_INTEGRATION = 7, /* stepper failed (budget, step underflow) */
  SLB_ERR_INTERNAL = 8
} slb_status;

typedef struct slb_algebra slb_algebra;
typedef struct slb_spray slb_spray;
typedef struct slb_curve slb_curve;
typedef struct slb_trajectory slb_trajectory;
typedef struct slb_rep slb_rep;

/* ---- meta ----------------------------------------------------------- */

/* Library version, e.g. "0.1.0". */
SLB_API const char* slb_version(void);

/* Message for the most recent failure on this thread; empty if none. */
SLB_API const char* slb_last_error(void);

/* ---- integrator configuration --------------------------------------- */

typedef struct slb_integrator_config {
  int method;        /* 0 = adaptive embedded RK5(4); 1 = fixed-step RK4 */
  double fixed_step; /* step for method 1 */
  double abs_tol;    /* absolute tolerance for method 0 */
  double rel_tol;    /* relative tolerance for method 0 */
  double max_step;   /* cap on step size for method 0; 0 disables */
  long max_steps;    /* iteration budget */
} slb_integrator_config;

SLB_API void slb_integrator_config_default(slb_integrator_config* cfg);

/* ---- Lie algebras ---------------------------------------------------- */

/* Built-in algebras: su2, heisenberg3, sl2r, e2, solvable2, abelian_<n>. */
SLB_API slb_status slb_algebra_catalog(const char* name, slb_algebra** out);

/* From structure constants (antisymmetrized; Jacobi checked to jacobi_tol,
 * pass 0 for the default). */
SLB_API slb_status slb_algebra_create(int dim, const double* structure, double jacobi_tol,
                                      slb_algebra** out);

SLB_API void slb_algebra_free(slb_algebra* g);
SLB_API int slb_algebra_dim(const slb_algebra* g);
SLB_API const char* slb_algebra_name(const slb_algebra* g);

/* Newline-separated catalog names written into buffer (NUL-terminated). */
SLB_API slb_status slb_algebra_catalog_names(char* buffer, size_t cap);

SLB_API slb_status slb_algebra_bracket(const slb_algebra* g, const double* x, const double* y,
                                       double* out);
SLB_API slb_status slb_algebra_jacobi_defect(const slb_algebra* g, double* out);

/* Orthonormal basis of the center written to `basis` (count rows of dim
 * doubles; caller provides dim*dim capacity). */
SLB_API slb_status slb_algebra_center(const slb_algebra* g, double tol, double* basis,
                                      int* count);

/* ---- sprays ----------------------------------------------------------- */

SLB_API slb_status slb_spray_zero(const slb_algebra* g, slb_spray** out);

/* Geodesic spray of the left-invariant Riemannian metric Q (dim*dim, SPD). */
SLB_API slb_status slb_spray_riemannian(const slb_algebra* g, const double* Q, slb_spray** out);

/* Randers metric F(y) = sqrt(y'Qy) + b'y with |b|_{Q^-1} < 1 strictly. */
SLB_API slb_status slb_spray_randers(const slb_algebra* g, const double* Q, const double* b,
                                     slb_spray** out);

/* Quadratic evaluator eta_k(y) = sum_ij T[(i*dim+j)*dim+k] y_i y_j. */
SLB_API slb_status slb_spray_quadratic(const slb_algebra* g, const double* T, slb_spray** out);

/* Polynomial (optionally rational) evaluator.  Numerator: n_num monomials,
 * monomial t contributing coeff[t] * prod_i y_i^exponents[t*dim+i] to
 * component targets[t].  A nonempty denominator (shared by all components)
 * uses the same monomial encoding without targets. */
SLB_API slb_status slb_spray_custom(const slb_algebra* g, int n_num, const int* num_exponents,
                                    const int* num_targets, const double* num_coeffs, int n_den,
                                    const int* den_exponents, const double* den_coeffs,
                                    slb_spray** out);

SLB_API void slb_spray_free(slb_spray* s);

/* Radius of the excluded ball around y = 0 (default 1e-8). */
SLB_API slb_status slb_spray_set_y_floor(slb_spray* s, double floor);

/* 0 = nested dual numbers (default), 1 = finite differences. */
SLB_API slb_status slb_spray_set_derivative_mode(slb_spray* s, int mode);

SLB_API slb_status slb_spray_eta(const slb_spray* s, const double* y, double* out);
SLB_API slb_status slb_spray_d_eta(const slb_spray* s, const double* y, const double* w,
                                   double* out);
SLB_API slb_status slb_spray_connection(const slb_spray* s, const double* y, const double* w,
                                        double* out);

/* Fundamental tensor g_y as dim*dim row-major (metric variants only). */
SLB_API slb_status slb_spray_fundamental_tensor(const slb_spray* s, const double* y, double* out);
SLB_API slb_status slb_spray_finsler_norm(const slb_spray* s, const double* y, double* out);

/* ---- curvature -------------------------------------------------------- */

SLB_API slb_status slb_riemann(const slb_spray* s, const double* y, const double* w, double* out);

/* Independent route: differentiate parallel fields along the geodesic
 * through y0 and read the curvature at t_probe. */
SLB_API slb_status slb_riemann_via_transport(const slb_spray* s, const double* y0,
                                             const double* w0, double t_probe,
                                             const slb_integrator_config* cfg, double* out);

SLB_API slb_status slb_flag_curvature(const slb_spray* s, const double* y, const double* w,
                                      double* out);
SLB_API slb_status slb_s_curvature(const slb_spray* s, const double* y, double* out);
SLB_API slb_status slb_landsberg(const slb_spray* s, const double* y, const double* w,
                                 double* out);
SLB_API slb_status slb_landsberg_via_transport(const slb_spray* s, const double* y0,
                                               const double* w0,
                                               const slb_integrator_config* cfg, double* out);

/* ---- velocity curves -------------------------------------------------- */

SLB_API slb_status slb_curve_constant(int dim, const double* w, slb_curve** out);
SLB_API slb_status slb_curve_piecewise(int dim, int n_legs, const double* ws, const double* dts,
                                       slb_curve** out);
SLB_API slb_status slb_curve_sampled(int dim, int n_samples, const double* ts, const double* ws,
                                     slb_curve** out);
/* coeffs[k*dim + i] multiplies t^k in component i. */
SLB_API slb_status slb_curve_polynomial(int dim, int n_coeffs, const double* coeffs,
                                        slb_curve** out);
SLB_API void slb_curve_free(slb_curve* c);
SLB_API slb_status slb_curve_eval(const slb_curve* c, double t, double* out);

/* ---- trajectories ----------------------------------------------------- */

#define SLB_TRAJECTORY_COMPLETE 0
#define SLB_TRAJECTORY_DOMAIN_EXIT 1

SLB_API void slb_trajectory_free(slb_trajectory* tr);
SLB_API long slb_trajectory_size(const slb_trajectory* tr);
SLB_API int slb_trajectory_dim(const slb_trajectory* tr);
SLB_API int slb_trajectory_status(const slb_trajectory* tr);
SLB_API slb_status slb_trajectory_span(const slb_trajectory* tr, double* t_min, double* t_max);

/* Copy the accepted nodes: times (size) and states (size*dim).  Either
 * pointer may be NULL to skip it. */
SLB_API slb_status slb_trajectory_nodes(const slb_trajectory* tr, double* times, double* states);

/* Dense evaluation inside the covered span. */
SLB_API slb_status slb_trajectory_eval(const slb_trajectory* tr, double t, double* out);

/* ---- flows and transport ---------------------------------------------- */

SLB_API slb_status slb_geodesic_flow(const slb_spray* s, const double* y0, double t0, double t1,
                                     const slb_integrator_config* cfg, slb_trajectory** out);

/* Parallel vector field w(t) along an integrated geodesic, anchored at the
 * geodesic's requested start time. */
SLB_API slb_status slb_linear_transport(const slb_spray* s, const slb_trajectory* geodesic,
                                        const double* w0, const slb_integrator_config* cfg,
                                        slb_trajectory** out);

/* Velocity curve y(t) solving y' + N(y, w(t)) = 0 along a given w-curve. */
SLB_API slb_status slb_nonlinear_transport(const slb_spray* s, const slb_curve* w, const double* y0,
                                           double t0, double t1, const slb_integrator_config* cfg,
                                           slb_trajectory** out);

/* Time-t map of the field -N(., w) applied to y0. */
SLB_API slb_status slb_one_param_flow(const slb_spray* s, const double* w, double t,
                                      const double* y0, const slb_integrator_config* cfg,
                                      double* out);

/* Endpoint minus start for the parallelogram loop with legs
 * scale*w1, scale*w2, -scale*w1, -scale*w2 (unit-time legs). */
SLB_API slb_status slb_loop_defect(const slb_spray* s, const double* w1, const double* w2,
                                   double scale, const double* y0,
                                   const slb_integrator_config* cfg, double* out);

/* Defect norms over a ladder of scales plus the log-log slope. */
SLB_API slb_status slb_loop_defect_slope(const slb_spray* s, const double* w1, const double* w2,
                                         const double* scales, int n_scales, const double* y0,
                                         const slb_integrator_config* cfg, double* defect_norms,
                                         double* slope);

/* ---- holonomy --------------------------------------------------------- */

/* Evaluate an iterated bracket of the connection fields X_i = N(., e_i) at
 * y.  Words use 1-based leaves: "[1,[2,3]]". */
SLB_API slb_status slb_vf_eval(const slb_spray* s, const char* word, const double* y, double* out);

/* Canonical bracket words up to max_depth, newline-separated. */
SLB_API slb_status slb_words(int dim, int max_depth, long cap, char* buffer, size_t bufcap);

typedef struct slb_dim_result {
  int depth;
  int words;     /* words of depth <= depth */
  int samples;   /* base points used */
  int rank;      /* numerical rank; lower bound for the span dimension */
  int sv_offset; /* into the singular-value buffer */
  int sv_count;
} slb_dim_result;

/* Holonomy dimension estimates for depths 1..max_depth.  `results` has
 * capacity max_depth; singular values are concatenated into sv_buffer
 * (capacity sv_cap, may be NULL with sv_cap 0 to skip). */
SLB_API slb_status slb_dim_estimate(const slb_spray* s, int max_depth, int samples,
                                    double svd_tol, unsigned long long seed,
                                    slb_dim_result* results, double* sv_buffer, int sv_cap,
                                    int* sv_used);

/* ---- matrix presentations and group curves ---------------------------- */

SLB_API slb_status slb_rep_catalog(const slb_algebra* g, slb_rep** out);

/* generators: dim matrices of size m*m, concatenated row-major. */
SLB_API slb_status slb_rep_create(const slb_algebra* g, int m, const double* generators,
                                  slb_rep** out);
SLB_API void slb_rep_free(slb_rep* rep);
SLB_API int slb_rep_matrix_size(const slb_rep* rep);
SLB_API slb_status slb_rep_map(const slb_rep* rep, const double* y, double* out);

/* Largest entry of rho([e_i,e_j]) - [rho_i, rho_j] over all pairs. */
SLB_API slb_status slb_rep_defect(const slb_rep* rep, double* out);

/* Group curve C' = C rho(y(t)) from the identity (or c0 when non-NULL),
 * sampled at the velocity trajectory's nodes.  Call with times/mats NULL
 * to query the node count. */
SLB_API slb_status slb_reconstruct_curve(const slb_rep* rep, const slb_trajectory* velocity,
                                         const slb_integrator_config* cfg, const double* c0,
                                         double* times, double* mats, long cap, long* count);

/* Ordered product of exp(rho(w_k) dt_k) over the legs. */
SLB_API slb_status slb_piecewise_endpoint(const slb_rep* rep, int n_legs, const double* ws,
                                          const double* dts, double* out);

/* Reconstruct the geodesic group curve from the identity and from the
 * endpoint g0 of a piecewise-constant prefix; returns the largest
 * deviation |g0 C_id(t) - C_g0(t)| over the nodes. */
SLB_API slb_status slb_left_invariance_residual(const slb_rep* rep, const slb_spray* s,
                                                int n_legs, const double* ws, const double* dts,
                                                const double* y0, double t_end,
                                                const slb_integrator_config* cfg, double* out);

/* ---- property verification -------------------------------------------- */

typedef struct slb_check {
  char name[64];
  int checks;
  double max_residual;
  double tolerance;
  int passed;
  char note[160];
} slb_check;

/* Run the structural property suites for a spray.  Writes up to `cap`
 * results and the total available count; all_passed reflects every suite,
 * including any beyond cap. */
SLB_API slb_status slb_verify(const slb_spray* s, const slb_integrator_config* cfg,
                              unsigned long long seed, slb_check* results, int cap, int* count,
                              int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* SPRAYLAB_SPRAYLAB_H */
