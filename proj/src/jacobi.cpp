#include "ballspec/jacobi.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "ballspec/types.hpp"

namespace ballspec {

JacobiParams::JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > -1.0) || !(beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    std::ostringstream os;
    os << "Jacobi exponents must exceed -1 (got alpha=" << alpha << ", beta=" << beta << ")";
    throw ParameterError(os.str());
  }
}

namespace {

void check_degree(int n) {
  if (n < 0) throw ParameterError("Jacobi degree must be non-negative");
}

// One step of the three-term recurrence, returning P_k from P_{k-1}, P_{k-2}.
inline double recurrence_step(int k, double a, double b, double x, double p1, double p0) {
  const double s = 2.0 * k + a + b;
  const double denom = 2.0 * k * (k + a + b) * (s - 2.0);
  const double g1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
  const double g0 = -2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
  return (g1 * p1 + g0 * p0) / denom;
}

double jacobi_raw(int n, double a, double b, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
  for (int k = 2; k <= n; ++k) {
    const double pk = recurrence_step(k, a, b, x, p1, p0);
    p0 = p1;
    p1 = pk;
  }
  return p1;
}

double log_gauss_weight_constant(int n, double a, double b) {
  return (a + b + 1.0) * std::numbers::ln2 + std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
         std::lgamma(n + a + b + 1.0) - std::lgamma(n + 1.0);
}

}  // namespace

double jacobi_eval(int n, const JacobiParams& p, double x) {
  check_degree(n);
  return jacobi_raw(n, p.alpha(), p.beta(), x);
}

double jacobi_derivative(int n, const JacobiParams& p, double x) {
  check_degree(n);
  if (n == 0) return 0.0;
  const double a = p.alpha();
  const double b = p.beta();
  return 0.5 * (n + a + b + 1.0) * jacobi_raw(n - 1, a + 1.0, b + 1.0, x);
}

void jacobi_eval_all(const JacobiParams& p, double x, std::span<double> out) {
  if (out.empty()) return;
  const double a = p.alpha();
  const double b = p.beta();
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
  for (std::size_t k = 2; k < out.size(); ++k) {
    out[k] = recurrence_step(static_cast<int>(k), a, b, x, out[k - 1], out[k - 2]);
  }
}

double log_norm_h(int n, const JacobiParams& p) {
  check_degree(n);
  const double a = p.alpha();
  const double b = p.beta();
  if (n == 0) {
    // (1+a+b) Gamma(1+a+b) folded into Gamma(2+a+b); valid also for a+b = -1.
    return (1.0 + a + b) * std::numbers::ln2 + std::lgamma(1.0 + a) + std::lgamma(1.0 + b) -
           std::lgamma(2.0 + a + b);
  }
  return (1.0 + a + b) * std::numbers::ln2 + std::lgamma(1.0 + a + n) + std::lgamma(1.0 + b + n) -
         std::lgamma(n + 1.0) - std::log(1.0 + a + b + 2.0 * n) - std::lgamma(1.0 + a + b + n);
}

double norm_h(int n, const JacobiParams& p) { return std::exp(log_norm_h(n, p)); }

double orthonormal_eval(int n, const JacobiParams& p, double x) {
  return jacobi_eval(n, p, x) * std::exp(-0.5 * log_norm_h(n, p));
}

double orthonormal_derivative(int n, const JacobiParams& p, double x) {
  return jacobi_derivative(n, p, x) * std::exp(-0.5 * log_norm_h(n, p));
}

double jacobi_weight_integral(const JacobiParams& p) { return norm_h(0, p); }

QuadRule gauss_jacobi(int nquad, const JacobiParams& p) {
  if (nquad < 1) throw ParameterError("gauss_jacobi: nquad must be >= 1");
  const double a = p.alpha();
  const double b = p.beta();

  // Golub-Welsch: eigenvalues of the symmetric Jacobi matrix give starting nodes.
  Eigen::VectorXd diag(nquad);
  Eigen::VectorXd sub(std::max(nquad - 1, 0));
  for (int k = 0; k < nquad; ++k) {
    const double s = 2.0 * k + a + b;
    diag[k] = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < nquad; ++k) {
    const double s = 2.0 * k + a + b;
    double v;
    if (k == 1) {
      v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    } else {
      v = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub[k - 1] = std::sqrt(v);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("gauss_jacobi: tridiagonal eigensolve failed for nquad=" + std::to_string(nquad));
  }

  QuadRule rule{std::vector<double>(nquad), std::vector<double>(nquad), p};
  const double log_c = log_gauss_weight_constant(nquad, a, b);
  for (int i = 0; i < nquad; ++i) {
    double x = eig.eigenvalues()[i];
    double step = 0.0;
    for (int it = 0; it < 12; ++it) {
      const double val = jacobi_raw(nquad, a, b, x);
      const double der = 0.5 * (nquad + a + b + 1.0) * jacobi_raw(nquad - 1, a + 1.0, b + 1.0, x);
      step = val / der;
      x -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    if (!(std::abs(step) <= 1e-14) || !(x > -1.0 && x < 1.0)) {
      std::ostringstream os;
      os << "gauss_jacobi: node " << i << " of " << nquad << " failed to converge (residual step " << step
         << ", x=" << x << ", alpha=" << a << ", beta=" << b << ")";
      throw NumericalError(os.str());
    }
    const double der = 0.5 * (nquad + a + b + 1.0) * jacobi_raw(nquad - 1, a + 1.0, b + 1.0, x);
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(log_c) / ((1.0 - x * x) * der * der);
  }
  for (int i = 1; i < nquad; ++i) {
    if (!(rule.nodes[i] > rule.nodes[i - 1])) {
      throw NumericalError("gauss_jacobi: nodes not strictly increasing after Newton polish");
    }
  }
  return rule;
}

int quad_padding() {
  constexpr int kDefault = 8;
  const char* env = std::getenv("BALLSPEC_QUAD_PAD");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 0 || v > 10000) return kDefault;
  return static_cast<int>(v);
}

}  // namespace ballspec
