#include "core/group_rep.hpp"

#include <cmath>

#include "core/linalg.hpp"

namespace spraylab {

MatrixRep::MatrixRep(const LieAlgebra& g, int m, std::vector<Mat> rho)
    : g_(g), m_(m), rho_(std::move(rho)) {}

MatrixRep MatrixRep::create(const LieAlgebra& g, std::vector<Mat> generators) {
  const int n = g.dim();
  if (static_cast<int>(generators.size()) != n) {
    throw ValidationError("matrix rep: need one generator per basis element (" +
                          std::to_string(n) + ")");
  }
  if (generators.empty()) throw ValidationError("matrix rep: empty generator list");
  const int m = generators[0].rows;
  for (const Mat& r : generators) {
    if (r.rows != m || r.cols != m) {
      throw ValidationError("matrix rep: generators must be square matrices of equal size");
    }
  }
  return MatrixRep(g, m, std::move(generators));
}

namespace {

Mat zeros(int m) {
  Mat z;
  z.rows = z.cols = m;
  z.a.assign(static_cast<std::size_t>(m) * m, 0.0);
  return z;
}

Mat basis_matrix(int m, std::initializer_list<std::tuple<int, int, double>> entries) {
  Mat z = zeros(m);
  for (const auto& [r, c, v] : entries) z(r, c) = v;
  return z;
}

}  // namespace

MatrixRep MatrixRep::catalog(const LieAlgebra& g) {
  const std::string& name = g.name();
  std::vector<Mat> rho;
  if (name == "su2") {
    // Left multiplication by i/2, j/2, k/2 on quaternions (coordinates
    // 1, i, j, k), a real 4x4 faithful presentation.
    rho.push_back(basis_matrix(4, {{0, 1, -0.5}, {1, 0, 0.5}, {2, 3, -0.5}, {3, 2, 0.5}}));
    rho.push_back(basis_matrix(4, {{0, 2, -0.5}, {1, 3, 0.5}, {2, 0, 0.5}, {3, 1, -0.5}}));
    rho.push_back(basis_matrix(4, {{0, 3, -0.5}, {1, 2, -0.5}, {2, 1, 0.5}, {3, 0, 0.5}}));
  } else if (name == "heisenberg3") {
    rho.push_back(basis_matrix(3, {{0, 1, 1.0}}));
    rho.push_back(basis_matrix(3, {{1, 2, 1.0}}));
    rho.push_back(basis_matrix(3, {{0, 2, 1.0}}));
  } else if (name == "sl2r") {
    rho.push_back(basis_matrix(2, {{0, 0, 1.0}, {1, 1, -1.0}}));
    rho.push_back(basis_matrix(2, {{0, 1, 1.0}}));
    rho.push_back(basis_matrix(2, {{1, 0, 1.0}}));
  } else if (name == "e2") {
    // Euclidean motions of the plane in homogeneous coordinates.
    rho.push_back(basis_matrix(3, {{0, 1, -1.0}, {1, 0, 1.0}}));
    rho.push_back(basis_matrix(3, {{0, 2, 1.0}}));
    rho.push_back(basis_matrix(3, {{1, 2, 1.0}}));
  } else if (name == "solvable2") {
    rho.push_back(basis_matrix(2, {{0, 0, 1.0}}));
    rho.push_back(basis_matrix(2, {{0, 1, 1.0}}));
  } else if (name.rfind("abelian_", 0) == 0) {
    const int n = g.dim();
    for (int i = 0; i < n; ++i) rho.push_back(basis_matrix(n, {{i, i, 1.0}}));
  } else {
    throw LookupError("no catalog matrix presentation for algebra \"" + name + "\"");
  }
  MatrixRep rep = create(g, std::move(rho));
  return rep;
}

Mat MatrixRep::map(const Vec& y) const {
  if (static_cast<int>(y.size()) != g_.dim()) {
    throw ValidationError("matrix rep: vector size does not match the algebra dimension");
  }
  Mat out = zeros(m_);
  for (std::size_t i = 0; i < rho_.size(); ++i) {
    if (y[i] == 0.0) continue;
    for (std::size_t k = 0; k < out.a.size(); ++k) out.a[k] += y[i] * rho_[i].a[k];
  }
  return out;
}

double MatrixRep::homomorphism_defect() const {
  const int n = g_.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Vec br(n);
      for (int k = 0; k < n; ++k) br[k] = g_.c(i, j, k);
      Mat lhs = map(br);
      Mat comm = mat_add(mat_mul(rho_[static_cast<std::size_t>(i)], rho_[static_cast<std::size_t>(j)]),
                         mat_scaled(mat_mul(rho_[static_cast<std::size_t>(j)],
                                            rho_[static_cast<std::size_t>(i)]),
                                    -1.0));
      for (std::size_t k = 0; k < lhs.a.size(); ++k) {
        worst = std::max(worst, std::abs(lhs.a[k] - comm.a[k]));
      }
    }
  }
  return worst;
}

GroupCurve reconstruct_curve(const MatrixRep& rep, const Trajectory& velocity,
                             const IntegratorConfig& cfg, const Mat* C0) {
  const int m = rep.matrix_size();
  if (velocity.size() == 0) throw ValidationError("reconstruct_curve: empty velocity trajectory");
  Mat init = C0 ? *C0 : Mat::identity(m);
  if (init.rows != m || init.cols != m) {
    throw ValidationError("reconstruct_curve: initial matrix size does not match the presentation");
  }

  // Flatten C row-major and integrate C' = C rho(y(t)) with the same
  // stepper as the algebra-level flows, sampling y from dense output.
  OdeRhs rhs = [&rep, &velocity, m](double t, const Vec& x, Vec& dx) {
    Mat r = rep.map(velocity.eval(t));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        double acc = 0.0;
        for (int k = 0; k < m; ++k) acc += x[static_cast<std::size_t>(i) * m + k] * r(k, j);
        dx[static_cast<std::size_t>(i) * m + j] = acc;
      }
    }
    return true;
  };

  const double t0 = velocity.t_requested_begin;
  const double t1 = velocity.forward ? velocity.t_max() : velocity.t_min();
  Trajectory flat = integrate(rhs, init.a, t0, t1, cfg);

  GroupCurve out;
  out.status = velocity.status;
  for (std::size_t k = 0; k < velocity.t.size(); ++k) {
    double tk = velocity.t[k];
    Vec entries = flat.eval(tk);
    Mat c;
    c.rows = c.cols = m;
    c.a = std::move(entries);
    out.t.push_back(tk);
    out.C.push_back(std::move(c));
  }
  return out;
}

Mat piecewise_endpoint(const MatrixRep& rep, const std::vector<LoopLeg>& legs) {
  Mat acc = Mat::identity(rep.matrix_size());
  for (const LoopLeg& leg : legs) {
    if (!(leg.dt >= 0.0)) throw ValidationError("piecewise_endpoint: leg duration must be >= 0");
    if (leg.dt == 0.0) continue;
    Mat step = mat_exp(mat_scaled(rep.map(leg.w), leg.dt));
    acc = mat_mul(acc, step);
  }
  return acc;
}

double left_invariance_residual(const MatrixRep& rep, const SprayField& s,
                                const std::vector<LoopLeg>& prefix, const Vec& y0, double t_end,
                                const IntegratorConfig& cfg) {
  if (&rep.algebra() != &s.algebra() && rep.algebra().dim() != s.algebra().dim()) {
    throw ValidationError("left_invariance_residual: presentation and spray dimensions differ");
  }
  Mat g0 = piecewise_endpoint(rep, prefix);
  Trajectory geo = geodesic_flow(s, y0, 0.0, t_end, cfg);
  GroupCurve from_id = reconstruct_curve(rep, geo, cfg, nullptr);
  GroupCurve from_g0 = reconstruct_curve(rep, geo, cfg, &g0);
  double worst = 0.0;
  for (std::size_t k = 0; k < from_id.C.size(); ++k) {
    Mat shifted = mat_mul(g0, from_id.C[k]);
    for (std::size_t e = 0; e < shifted.a.size(); ++e) {
      worst = std::max(worst, std::abs(shifted.a[e] - from_g0.C[k].a[e]));
    }
  }
  return worst;
}

}  // namespace spraylab
