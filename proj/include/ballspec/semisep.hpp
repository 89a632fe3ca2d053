#pragma once

#include <Eigen/Dense>

#include <array>
#include <span>
#include <string>
#include <vector>

#include "ballspec/types.hpp"

namespace ballspec {

/// Semi-separable matrix of rank <= 2 above and below the diagonal:
///   A_ij = u_i . v_j  (i < j),  A_ij = p_i . q_j  (i > j),  A_ii = diag_i,
/// with every entry forced to zero where i + j is even if parity_mask is set.
class SemiSep2 {
 public:
  using Gen = std::array<double, 2>;

  SemiSep2() = default;
  SemiSep2(std::vector<Gen> u, std::vector<Gen> v, std::vector<Gen> p, std::vector<Gen> q,
           std::vector<double> diag, bool parity_mask);

  /// Skew-symmetric instance from lower generators: upper = -lower^T, zero diagonal.
  static SemiSep2 skew(std::vector<Gen> p, std::vector<Gen> q, bool parity_mask);

  /// Fits unmasked rank-2 generators to the strictly triangular parts of a dense matrix.
  /// Throws NumericalError if the fit residual exceeds tol * max(1, max|A|).
  static SemiSep2 from_dense(const Eigen::MatrixXd& A, double tol = 1e-10);

  std::size_t size() const noexcept { return diag_.size(); }
  bool parity_mask() const noexcept { return mask_; }

  double entry(std::size_t i, std::size_t j) const;
  Eigen::MatrixXd to_dense() const;

  SemiSep2 scaled(double s) const;

  const std::vector<Gen>& u() const noexcept { return u_; }
  const std::vector<Gen>& v() const noexcept { return v_; }
  const std::vector<Gen>& p() const noexcept { return p_; }
  const std::vector<Gen>& q() const noexcept { return q_; }
  const std::vector<double>& diag() const noexcept { return diag_; }

  /// y = A x in O(size) operations (two sweeps of parity-split prefix sums).
  template <class T>
  void matvec(std::span<const T> x, std::span<T> y) const;

  CVector matvec(std::span<const Complex> x) const;

  /// Generators and diagonal as a JSON object {"size", "parity_mask", "u", "v", "p", "q", "diag"}.
  std::string to_json() const;

 private:
  std::vector<Gen> u_, v_, p_, q_;
  std::vector<double> diag_;
  bool mask_ = false;
};

template <class T>
void SemiSep2::matvec(std::span<const T> x, std::span<T> y) const {
  const std::size_t n = size();
  if (x.size() != n || y.size() != n) throw UsageError("SemiSep2::matvec: size mismatch");
  // acc[bucket][k]: with the mask, a row i only sees columns of the opposite parity.
  T acc[2][2] = {{T(0.0), T(0.0)}, {T(0.0), T(0.0)}};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t read = mask_ ? 1 - (i & 1U) : 0;
    const std::size_t write = mask_ ? (i & 1U) : 0;
    y[i] = acc[read][0] * p_[i][0] + acc[read][1] * p_[i][1];
    if (!mask_) y[i] += x[i] * diag_[i];
    acc[write][0] += x[i] * q_[i][0];
    acc[write][1] += x[i] * q_[i][1];
  }
  acc[0][0] = acc[0][1] = acc[1][0] = acc[1][1] = T(0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    const std::size_t read = mask_ ? 1 - (ii & 1U) : 0;
    const std::size_t write = mask_ ? (ii & 1U) : 0;
    y[ii] += acc[read][0] * u_[ii][0] + acc[read][1] * u_[ii][1];
    acc[write][0] += x[ii] * v_[ii][0];
    acc[write][1] += x[ii] * v_[ii][1];
  }
}

/// Solves (lambda I - A) x = rhs by dense LU. Throws SolverError if the relative residual
/// exceeds 1e-10.
CVector solve_shifted(const SemiSep2& A, Complex lambda, std::span<const Complex> rhs);

}  // namespace ballspec
