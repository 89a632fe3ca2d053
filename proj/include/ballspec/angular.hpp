#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ballspec/types.hpp"

namespace ballspec {

// Angular coordinates: theta_1 in [-pi, pi), theta_j in [0, pi) for j >= 2.
// The orthonormal angular system (under d theta_1 ... d theta_{d-1}) is
//   e_k(theta) = (2 pi)^{-1/2} e^{i k_1 theta_1} prod_{j>=2} pi^{-1/2} e^{2 i k_j theta_j}.

Complex angular_mode(std::span<const int> k, std::span<const double> theta);

/// Lebesgue measure of the angular box: 2 pi * pi^{d-2}.
double angular_measure(int d);

/// Number of angular indices with |k_j| <= K: (2K+1)^{d-1}.
std::size_t angular_count(int d, int K);

/// Lexicographic position of k (k_1 most significant), each k_j shifted by K.
std::size_t angular_flat(std::span<const int> k, int K);
std::vector<int> angular_unflat(std::size_t idx, int d, int K);

/// Tensor grid of equispaced angular samples with FFT-based analysis.
class AngularGrid {
 public:
  AngularGrid(int d, int samples_per_dim);

  int d() const noexcept { return d_; }
  int samples_per_dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }

  /// Writes the angles of flat sample `idx` (last angle fastest) into theta.
  void point(std::size_t idx, std::span<double> theta) const;

  /// Trapezoidal weight of every sample.
  double weight() const noexcept { return weight_; }

  /// Coefficients <f, e_k> for |k_j| <= K, ordered by angular_flat. Requires
  /// samples_per_dim >= 2K+1; exact for trigonometric data of bandwidth below n-K.
  CVector analyze(std::span<const Complex> samples, int K) const;

 private:
  int d_;
  int n_;
  std::size_t size_;
  double weight_;
};

}  // namespace ballspec
