#include "core/algebra.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "core/linalg.hpp"

namespace spraylab {

LieAlgebra::LieAlgebra(int n, std::vector<double> c, std::string name)
    : n_(n), c_(std::move(c)), name_(std::move(name)) {}

LieAlgebra LieAlgebra::from_structure_constants(int dim, const std::vector<double>& c,
                                                double jacobi_tol) {
  if (dim < 1) throw ValidationError("algebra dimension must be at least 1");
  size_t need = static_cast<size_t>(dim) * dim * dim;
  if (c.size() != need)
    throw ValidationError("structure constant tensor has wrong size: expected " +
                          std::to_string(need) + " entries, got " + std::to_string(c.size()));
  std::vector<double> anti(need, 0.0);
  auto at = [dim](const std::vector<double>& v, int i, int j, int k) {
    return v[(static_cast<size_t>(i) * dim + j) * dim + k];
  };
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        anti[(static_cast<size_t>(i) * dim + j) * dim + k] =
            0.5 * (at(c, i, j, k) - at(c, j, i, k));
  LieAlgebra g(dim, std::move(anti), "custom");
  double defect = g.jacobi_defect();
  if (defect > jacobi_tol)
    throw ValidationError("structure constants violate the Jacobi identity: defect " +
                          std::to_string(defect) + " exceeds tolerance " +
                          std::to_string(jacobi_tol));
  return g;
}

namespace {

std::vector<double> zeros(int n) {
  return std::vector<double>(static_cast<size_t>(n) * n * n, 0.0);
}

// Sets [e_i, e_j] = sum_k v_k e_k together with the antisymmetric partner.
void set_bracket(std::vector<double>& c, int n, int i, int j, int k, double v) {
  c[(static_cast<size_t>(i) * n + j) * n + k] = v;
  c[(static_cast<size_t>(j) * n + i) * n + k] = -v;
}

}  // namespace

LieAlgebra LieAlgebra::catalog(const std::string& name) {
  if (name.rfind("abelian_", 0) == 0) {
    const std::string suffix = name.substr(8);
    if (suffix.empty() || suffix.find_first_not_of("0123456789") != std::string::npos)
      throw LookupError("unknown catalog algebra '" + name + "'");
    int n = std::stoi(suffix);
    if (n < 1 || n > 16)
      throw LookupError("abelian dimension out of range [1,16]: '" + name + "'");
    return LieAlgebra(n, zeros(n), name);
  }
  if (name == "heisenberg3") {
    auto c = zeros(3);
    set_bracket(c, 3, 0, 1, 2, 1.0);  // [e1,e2] = e3
    return LieAlgebra(3, std::move(c), name);
  }
  if (name == "su2") {
    auto c = zeros(3);
    set_bracket(c, 3, 0, 1, 2, 1.0);  // [e1,e2] = e3
    set_bracket(c, 3, 1, 2, 0, 1.0);  // [e2,e3] = e1
    set_bracket(c, 3, 2, 0, 1, 1.0);  // [e3,e1] = e2
    return LieAlgebra(3, std::move(c), name);
  }
  if (name == "sl2r") {
    auto c = zeros(3);
    set_bracket(c, 3, 0, 1, 1, 2.0);   // [h,e] = 2e
    set_bracket(c, 3, 0, 2, 2, -2.0);  // [h,f] = -2f
    set_bracket(c, 3, 1, 2, 0, 1.0);   // [e,f] = h
    return LieAlgebra(3, std::move(c), name);
  }
  if (name == "e2") {
    auto c = zeros(3);
    set_bracket(c, 3, 0, 1, 2, 1.0);   // [J,P1] = P2
    set_bracket(c, 3, 0, 2, 1, -1.0);  // [J,P2] = -P1
    return LieAlgebra(3, std::move(c), name);
  }
  if (name == "solvable2") {
    auto c = zeros(2);
    set_bracket(c, 2, 0, 1, 1, 1.0);  // [e1,e2] = e2
    return LieAlgebra(2, std::move(c), name);
  }
  throw LookupError("unknown catalog algebra '" + name + "'");
}

std::vector<std::string> LieAlgebra::catalog_names() {
  return {"abelian_n", "heisenberg3", "su2", "sl2r", "e2", "solvable2"};
}

Mat LieAlgebra::ad(const Vec& x) const {
  if (static_cast<int>(x.size()) != n_) throw ValidationError("ad: vector has wrong dimension");
  Mat m(n_, n_);
  // column j of ad(x) is [x, e_j]
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k) {
      double s = 0.0;
      for (int i = 0; i < n_; ++i) s += x[i] * c(i, j, k);
      m(k, j) = s;
    }
  return m;
}

double LieAlgebra::jacobi_defect() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) {
          double s = 0.0;
          for (int m = 0; m < n_; ++m)
            s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

std::vector<Vec> LieAlgebra::center(double tol) const {
  // Stack the n maps z -> [e_i, z]; the center is their common kernel.
  Eigen::MatrixXd stacked(n_ * n_, n_);
  for (int i = 0; i < n_; ++i) {
    Vec ei(n_, 0.0);
    ei[i] = 1.0;
    Mat m = ad(ei);
    for (int r = 0; r < n_; ++r)
      for (int col = 0; col < n_; ++col) stacked(i * n_ + r, col) = m(r, col);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  std::vector<Vec> basis;
  for (int k = 0; k < n_; ++k) {
    double s = k < sv.size() ? sv(k) : 0.0;
    if (s <= tol * std::max(smax, 1.0)) {
      Vec v(n_);
      for (int r = 0; r < n_; ++r) v[r] = svd.matrixV()(r, k);
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

bool LieAlgebra::is_bi_invariant(const Mat& Q, double tol) const {
  if (Q.rows != n_ || Q.cols != n_) throw ValidationError("is_bi_invariant: Q has wrong shape");
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      for (int z = 0; z < n_; ++z) {
        double s = 0.0;
        for (int k = 0; k < n_; ++k) s += c(x, y, k) * Q(k, z) + c(x, z, k) * Q(y, k);
        if (std::abs(s) > tol) return false;
      }
  return true;
}

}  // namespace spraylab
