#pragma once

#include <span>
#include <vector>

namespace ballspec {

/// Exponents of the Jacobi weight (1-x)^alpha (1+x)^beta on [-1, 1].
class JacobiParams {
 public:
  JacobiParams(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  friend bool operator==(const JacobiParams&, const JacobiParams&) = default;

 private:
  double alpha_;
  double beta_;
};

/// P_n^{(alpha,beta)}(x) by the forward three-term recurrence.
double jacobi_eval(int n, const JacobiParams& p, double x);

/// d/dx P_n^{(alpha,beta)}(x).
double jacobi_derivative(int n, const JacobiParams& p, double x);

/// Squared norm h_n of P_n against the Jacobi weight, evaluated in log-Gamma form.
double norm_h(int n, const JacobiParams& p);
double log_norm_h(int n, const JacobiParams& p);

/// Orthonormal Jacobi polynomial P_n / sqrt(h_n).
double orthonormal_eval(int n, const JacobiParams& p, double x);
double orthonormal_derivative(int n, const JacobiParams& p, double x);

/// Fills out[k] = P_k^{(alpha,beta)}(x) for k = 0..out.size()-1.
void jacobi_eval_all(const JacobiParams& p, double x, std::span<double> out);

/// Integral of the Jacobi weight over [-1,1]: 2^{a+b+1} B(a+1, b+1).
double jacobi_weight_integral(const JacobiParams& p);

struct QuadRule {
  std::vector<double> nodes;    // strictly increasing, in (-1, 1)
  std::vector<double> weights;  // positive
  JacobiParams params;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Jacobi rule with nquad nodes, exact for degree <= 2*nquad-1.
QuadRule gauss_jacobi(int nquad, const JacobiParams& p);

/// Quadrature padding added to N when integrating degree-N bases.
/// Defaults to 8; the environment variable BALLSPEC_QUAD_PAD overrides it.
int quad_padding();

}  // namespace ballspec
