#include "ballspec/semisep.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ballspec {

SemiSep2::SemiSep2(std::vector<Gen> u, std::vector<Gen> v, std::vector<Gen> p, std::vector<Gen> q,
                   std::vector<double> diag, bool parity_mask)
    : u_(std::move(u)), v_(std::move(v)), p_(std::move(p)), q_(std::move(q)), diag_(std::move(diag)),
      mask_(parity_mask) {
  const auto n = diag_.size();
  if (u_.size() != n || v_.size() != n || p_.size() != n || q_.size() != n) {
    throw UsageError("SemiSep2: generator lengths must equal the matrix size");
  }
}

SemiSep2 SemiSep2::skew(std::vector<Gen> p, std::vector<Gen> q, bool parity_mask) {
  std::vector<Gen> u(q.size()), v(p.size());
  for (std::size_t i = 0; i < q.size(); ++i) u[i] = {-q[i][0], -q[i][1]};
  for (std::size_t i = 0; i < p.size(); ++i) v[i] = p[i];
  std::vector<double> diag(p.size(), 0.0);
  return SemiSep2(std::move(u), std::move(v), std::move(p), std::move(q), std::move(diag), parity_mask);
}

double SemiSep2::entry(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw UsageError("SemiSep2::entry: index out of range");
  if (mask_ && ((i + j) % 2 == 0)) return 0.0;
  if (i < j) return u_[i][0] * v_[j][0] + u_[i][1] * v_[j][1];
  if (i > j) return p_[i][0] * q_[j][0] + p_[i][1] * q_[j][1];
  return diag_[i];
}

Eigen::MatrixXd SemiSep2::to_dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd A(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  return A;
}

SemiSep2 SemiSep2::scaled(double s) const {
  auto u = u_;
  auto p = p_;
  auto diag = diag_;
  for (auto& g : u) g = {s * g[0], s * g[1]};
  for (auto& g : p) g = {s * g[0], s * g[1]};
  for (auto& d : diag) d *= s;
  return SemiSep2(std::move(u), v_, std::move(p), q_, std::move(diag), mask_);
}

CVector SemiSep2::matvec(std::span<const Complex> x) const {
  CVector y(x.size());
  matvec<Complex>(x, y);
  return y;
}

namespace {

// Fits L_ij = p_i . q_j on the strict lower triangle of L.
void fit_lower(const Eigen::MatrixXd& L, std::vector<SemiSep2::Gen>& p, std::vector<SemiSep2::Gen>& q) {
  const Eigen::Index n = L.rows();
  p.assign(static_cast<std::size_t>(n), {0.0, 0.0});
  q.assign(static_cast<std::size_t>(n), {0.0, 0.0});
  if (n < 2) return;
  const Eigen::Index h = n / 2;  // corner block rows [h, n) x cols [0, h)

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(L.block(h, 0, n - h, h), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  for (Eigen::Index j = 0; j < h; ++j) {
    for (Eigen::Index k = 0; k < std::min<Eigen::Index>(2, sv.size()); ++k) {
      q[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = sv[k] * svd.matrixV()(j, k);
    }
  }
  auto as_matrix = [](const SemiSep2::Gen& g) { return Eigen::Vector2d(g[0], g[1]); };

  auto solve_row = [&](Eigen::Index i, Eigen::Index jmax) {
    if (jmax == 0) return;
    Eigen::MatrixXd Q(jmax, 2);
    Eigen::VectorXd rhs(jmax);
    for (Eigen::Index j = 0; j < jmax; ++j) {
      Q.row(j) = as_matrix(q[static_cast<std::size_t>(j)]).transpose();
      rhs[j] = L(i, j);
    }
    const Eigen::Vector2d sol = Q.completeOrthogonalDecomposition().solve(rhs);
    p[static_cast<std::size_t>(i)] = {sol[0], sol[1]};
  };
  auto solve_col = [&](Eigen::Index j) {
    const Eigen::Index rows = n - 1 - j;
    if (rows <= 0) return;
    Eigen::MatrixXd P(rows, 2);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const Eigen::Index i = j + 1 + r;
      P.row(r) = as_matrix(p[static_cast<std::size_t>(i)]).transpose();
      rhs[r] = L(i, j);
    }
    const Eigen::Vector2d sol = P.completeOrthogonalDecomposition().solve(rhs);
    q[static_cast<std::size_t>(j)] = {sol[0], sol[1]};
  };

  // Lower rows from the corner columns, then the remaining columns, then the upper rows.
  for (Eigen::Index i = h; i < n; ++i) solve_row(i, h);
  for (Eigen::Index j = n - 2; j >= h; --j) solve_col(j);
  for (Eigen::Index i = 1; i < h; ++i) solve_row(i, i);
}

}  // namespace

SemiSep2 SemiSep2::from_dense(const Eigen::MatrixXd& A, double tol) {
  if (A.rows() != A.cols()) throw UsageError("SemiSep2::from_dense: matrix must be square");
  const auto n = static_cast<std::size_t>(A.rows());
  std::vector<Gen> p, q, ut, vt;
  fit_lower(A, p, q);
  const Eigen::MatrixXd At = A.transpose();
  fit_lower(At, ut, vt);  // A_ij (i<j) = (A^T)_ji = ut_j . vt_i
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
  SemiSep2 out(vt, ut, p, q, diag, false);

  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double resid = (out.to_dense() - A).cwiseAbs().maxCoeff();
  if (!(resid <= tol * scale)) {
    std::ostringstream os;
    os << "SemiSep2::from_dense: matrix is not rank-2 semi-separable (fit residual " << resid << ")";
    throw NumericalError(os.str());
  }
  return out;
}

std::string SemiSep2::to_json() const {
  auto gens = [](const std::vector<Gen>& g) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& x : g) arr.push_back({x[0], x[1]});
    return arr;
  };
  nlohmann::json j;
  j["size"] = size();
  j["parity_mask"] = mask_;
  j["u"] = gens(u_);
  j["v"] = gens(v_);
  j["p"] = gens(p_);
  j["q"] = gens(q_);
  j["diag"] = diag_;
  return j.dump();
}

CVector solve_shifted(const SemiSep2& A, Complex lambda, std::span<const Complex> rhs) {
  const auto n = static_cast<Eigen::Index>(A.size());
  if (rhs.size() != A.size()) throw UsageError("solve_shifted: size mismatch");
  Eigen::MatrixXcd M = -A.to_dense().cast<Complex>();
  M.diagonal().array() += lambda;
  const Eigen::Map<const Eigen::VectorXcd> b(rhs.data(), n);
  const Eigen::VectorXcd x = M.partialPivLu().solve(b);
  const double bnorm = b.norm();
  const double resid = (M * x - b).norm();
  if (!std::isfinite(resid) || resid > 1e-10 * std::max(bnorm, 1e-300)) {
    std::ostringstream os;
    os << "solve_shifted: shift " << lambda << " is (numerically) an eigenvalue; residual " << resid;
    throw SolverError(os.str(), resid);
  }
  return CVector(x.data(), x.data() + n);
}

}  // namespace ballspec
