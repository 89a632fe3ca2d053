#include "ballspec/diffmat.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ballspec {

namespace {

void check_alpha(double alpha, const char* where) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    std::ostringstream os;
    os << where << ": alpha must be > 0 (got " << alpha << "); no skew-symmetric D exists otherwise";
    throw ParameterError(os.str());
  }
}

double pow_or_one(double base, double e) {
  if (e == 0.0) return 1.0;
  if (base <= 0.0) return 0.0;
  return std::pow(base, e);
}

}  // namespace

ABCoeffs ab_coeffs(int M, double alpha) {
  check_alpha(alpha, "ab_coeffs");
  if (M < 0) throw ParameterError("ab_coeffs: M must be >= 0");
  ABCoeffs c{std::vector<double>(static_cast<std::size_t>(M + 1)), std::vector<double>(static_cast<std::size_t>(M + 1)),
             alpha};
  const double ta = 2.0 * alpha;
  c.a[0] = std::sqrt((ta + 1.0) / (2.0 * std::tgamma(ta + 1.0)));
  c.b[0] = std::sqrt(std::tgamma(ta + 2.0) / 2.0);
  if (!std::isfinite(c.a[0]) || !std::isfinite(c.b[0]) || c.a[0] == 0.0) {
    // Gamma(2 alpha + 2) overflows for large alpha; use the log form for the seeds.
    c.a[0] = ab_closed_a(0, alpha);
    c.b[0] = ab_closed_b(0, alpha);
  }
  for (int m = 1; m <= M; ++m) {
    c.a[m] = c.a[m - 1] * std::sqrt(m * (2.0 * m + ta + 1.0) / ((m + ta) * (2.0 * m + ta - 1.0)));
    c.b[m] = c.b[m - 1] * std::sqrt((2.0 * m + 1.0 + ta) * (m + ta) / (m * (2.0 * m + ta - 1.0)));
  }
  return c;
}

double ab_closed_a(int m, double alpha) {
  check_alpha(alpha, "ab_closed_a");
  return std::exp(0.5 * (std::lgamma(m + 1.0) + std::log(2.0 * m + 2.0 * alpha + 1.0) - std::numbers::ln2 -
                         std::lgamma(m + 1.0 + 2.0 * alpha)));
}

double ab_closed_b(int n, double alpha) {
  check_alpha(alpha, "ab_closed_b");
  return std::exp(0.5 * (std::log(2.0 * n + 1.0 + 2.0 * alpha) + std::lgamma(n + 1.0 + 2.0 * alpha) -
                         std::numbers::ln2 - std::lgamma(n + 1.0)));
}

SemiSep2 build_Dr(int N, double alpha) {
  if (N < 0) throw ParameterError("build_Dr: N must be >= 0");
  const auto c = ab_coeffs(N, alpha);
  std::vector<SemiSep2::Gen> p(static_cast<std::size_t>(N + 1)), q(static_cast<std::size_t>(N + 1));
  for (int i = 0; i <= N; ++i) {
    p[i] = {c.a[i], 0.0};
    q[i] = {c.b[i], 0.0};
  }
  return SemiSep2::skew(std::move(p), std::move(q), true);
}

Complex AngularDiag::operator()(int m) const {
  if (m < -K || m > K) throw ParameterError("AngularDiag: mode outside [-K, K]");
  return {0.0, static_cast<double>(m)};
}

AngularDiag build_Dtheta(int K) {
  if (K < 0) throw ParameterError("build_Dtheta: K must be >= 0");
  return AngularDiag{K};
}

Eigen::MatrixXd radial_diff_quadrature(const BasisSpec& spec, int nquad) {
  spec.validate();
  const auto f = radial_factor(spec);
  const auto poly = f.poly();
  const int N = spec.N;
  if (nquad <= 0) nquad = N + 1 + quad_padding();

  // R_n' = c_n (1-r)^{a-da} r^{b-db} T_n with T_n = (1-r)^da r^db p_n' - a r^db p_n + b (1-r)^da p_n,
  // where da = [a != 0], db = [b != 0]; then r^w R_n' R_k carries (1-r)^{2a-da} r^{2b-db+w}.
  const double da = f.a != 0.0 ? 1.0 : 0.0;
  const double db = f.b != 0.0 ? 1.0 : 0.0;
  const double ea = 2.0 * f.a - da;
  const double eb = 2.0 * f.b - db + f.w;
  const auto rule = gauss_jacobi(nquad, JacobiParams(ea, eb));
  const double jac = std::pow(2.0, -(ea + eb + 1.0));

  std::vector<double> scale(static_cast<std::size_t>(N + 1));
  for (int n = 0; n <= N; ++n) scale[n] = radial_scale(spec, n);

  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N + 1, N + 1);
  std::vector<double> P(static_cast<std::size_t>(N + 1)), T(static_cast<std::size_t>(N + 1));
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    const double r = 0.5 * (1.0 + x);
    jacobi_eval_all(poly, x, P);
    for (int n = 0; n <= N; ++n) {
      const double dp = 2.0 * jacobi_derivative(n, poly, x);
      T[n] = pow_or_one(1.0 - r, da) * pow_or_one(r, db) * dp - f.a * pow_or_one(r, db) * P[n] +
             f.b * pow_or_one(1.0 - r, da) * P[n];
    }
    const double w = rule.weights[i] * jac;
    for (int n = 0; n <= N; ++n) {
      for (int k = 0; k <= N; ++k) D(n, k) += w * scale[n] * scale[k] * T[n] * P[k];
    }
  }
  return D;
}

Eigen::MatrixXd ultraspherical_derivative_gram(int N, double alpha, int nquad) {
  if (N < 0) throw ParameterError("ultraspherical_derivative_gram: N must be >= 0");
  if (nquad <= 0) nquad = N + 1 + quad_padding();
  const JacobiParams p(alpha, alpha);
  const auto rule = gauss_jacobi(nquad, p);
  Eigen::MatrixXd I = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    for (int n = 0; n <= N; ++n) {
      const double dn = orthonormal_derivative(n, p, x);
      for (int k = 0; k <= N; ++k) I(n, k) += rule.weights[i] * dn * orthonormal_eval(k, p, x);
    }
  }
  return I;
}

Eigen::MatrixXd asymmetry_S_ex1(int Nmax, double alpha) {
  if (!(alpha > 1.0)) throw ParameterError("asymmetry_S_ex1: alpha must exceed 1");
  if (Nmax < 0) throw ParameterError("asymmetry_S_ex1: Nmax must be >= 0");
  Eigen::MatrixXd S(Nmax + 1, Nmax + 1);
  for (int m = 0; m <= Nmax; ++m) {
    for (int n = 0; n <= m; ++n) {
      const double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
      const double v = sign * std::sqrt((n + 1.0) / (m + 1.0)) *
                       std::sqrt((alpha + n + 1.0) * (alpha + 2.0 * m + 2.0) * (alpha + 2.0 * n + 2.0) /
                                 (alpha + m + 1.0));
      S(m, n) = v;
      S(n, m) = v;
    }
  }
  return S;
}

double asymmetry_beta0(int n, int m, double alpha) {
  if (!(alpha >= 0.0)) throw ParameterError("asymmetry_beta0: alpha must be >= 0");
  if (n < 0 || m < 0) throw ParameterError("asymmetry_beta0: degrees must be >= 0");
  const double sign = ((n + m) % 2 == 0) ? 1.0 : -1.0;
  return sign * std::sqrt((alpha + 2.0 * n + 1.0) * (alpha + 2.0 * m + 1.0));
}

Eigen::MatrixXd DiffOpSet::radial_matrix() const {
  if (Dr) return kRadialScale * Dr->to_dense();
  return radial_diff_quadrature(spec);
}

DiffOpSet build_diffops(const BasisSpec& spec) {
  spec.validate();
  DiffOpSet ops;
  ops.spec = spec;
  ops.Dtheta = build_Dtheta(spec.K);
  ops.certified = spec.closed_form_certified();
  if (ops.certified) ops.Dr = build_Dr(spec.N, spec.alpha);
  return ops;
}

namespace {

template <class F>
double sin2_quadrature(F&& integrand, int nodes) {
  // r = sin^2(pi s / 2), dr = (pi / 2) sin(pi s) ds on s in [0, 1].
  const auto rule = gauss_jacobi(nodes, JacobiParams(0.0, 0.0));
  double total = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double s = 0.5 * (1.0 + rule.nodes[i]);
    const double sn = std::sin(0.5 * kPi * s);
    const double r = sn * sn;
    total += 0.5 * rule.weights[i] * 0.5 * kPi * std::sin(kPi * s) * integrand(r);
  }
  return total;
}

}  // namespace

Complex profile_scalar(const RadialProfile& h, int nodes) {
  return {sin2_quadrature([&](double r) { return h.derivative(r) * h.value(r); }, nodes), 0.0};
}

double profile_norm2(const RadialProfile& h, int nodes) {
  return sin2_quadrature([&](double r) { const double v = h.value(r); return v * v; }, nodes);
}

Eigen::MatrixXcd CompoundOp::dense() const {
  if (core == nullptr) throw UsageError("CompoundOp::dense: no core operator");
  const Eigen::Index n = core->spec.N + 1;
  Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  E(0, 0) = d_scalar;
  if (kind == CompoundKind::Radial) {
    E.bottomRightCorner(n, n) = core->radial_matrix().cast<Complex>();
  } else {
    E.bottomRightCorner(n, n) = core->Dtheta(mode) * Eigen::MatrixXcd::Identity(n, n);
  }
  return E;
}

CompoundOp compound_radial(const DiffOpSet& core, const RadialProfile& h) {
  if (!h.value || !h.derivative) throw ParameterError("compound_radial: profile needs value and derivative");
  const double norm2 = profile_norm2(h);
  if (std::abs(norm2 - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "compound_radial: affine direction must have unit norm (|h|^2 = " << norm2 << ")";
    throw ParameterError(os.str());
  }
  if (std::abs(h.value(1.0)) > 1e-12) throw ParameterError("compound_radial: h(1) must vanish");
  return CompoundOp{profile_scalar(h), &core, CompoundKind::Radial, 0};
}

CompoundOp compound_angular(const DiffOpSet& core, int m) {
  return CompoundOp{core.Dtheta(m), &core, CompoundKind::Angular, m};
}

}  // namespace ballspec
