#include "ballspec/basis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ballspec/angular.hpp"

namespace ballspec {

namespace {

bool is_even_integer(double v) { return std::fmod(v, 2.0) == 0.0; }

// (1-r)^e with 0^0 = 1 and an exact zero at r = 1 for e > 0.
double pow_or_one(double base, double e) {
  if (e == 0.0) return 1.0;
  if (base <= 0.0) return 0.0;
  return std::pow(base, e);
}

}  // namespace

void BasisSpec::validate() const {
  std::ostringstream os;
  if (d < 2) os << "dimension d must be >= 2; ";
  if (N < 0) os << "N must be >= 0; ";
  if (K < 0) os << "K must be >= 0; ";
  switch (kind) {
    case BasisKind::WFunc:
      if (!(alpha > -1.0) || !(beta > -1.0)) os << "W-function exponents must exceed -1; ";
      if (d > 2 && alpha != beta) os << "ball W-functions (d > 2) require beta == alpha; ";
      break;
    case BasisKind::Ex1Weighted:
      if (!(alpha > 1.0)) os << "Example-1 basis requires alpha > 1; ";
      if (d != 2) os << "Example-1 basis is defined for d = 2 only; ";
      break;
    case BasisKind::Zernike:
      if (d != 2) os << "Zernike basis is defined for d = 2 only; ";
      break;
  }
  const auto msg = os.str();
  if (!msg.empty()) throw ParameterError("invalid BasisSpec: " + msg.substr(0, msg.size() - 2));
}

bool BasisSpec::skew_certified() const {
  return kind == BasisKind::WFunc && alpha > 0.0 && beta > 0.0;
}

bool BasisSpec::closed_form_certified() const { return skew_certified() && alpha == beta; }

bool BasisSpec::analytic_certified() const {
  return kind == BasisKind::WFunc && is_even_integer(alpha) && is_even_integer(beta);
}

InnerProductKind BasisSpec::inner_product() const {
  return kind == BasisKind::WFunc ? InnerProductKind::Cartesian : InnerProductKind::Polar;
}

std::size_t BasisSpec::coefficient_count() const {
  return static_cast<std::size_t>(N + 1) * angular_count(d, K);
}

RadialFactor radial_factor(const BasisSpec& spec) {
  switch (spec.kind) {
    case BasisKind::WFunc:
      return {spec.alpha / 2.0, spec.beta / 2.0, 0};
    case BasisKind::Ex1Weighted:
      return {spec.alpha / 2.0, 0.0, 1};
    case BasisKind::Zernike:
      return {0.0, 0.0, 1};
  }
  throw UsageError("radial_factor: unknown basis kind");
}

double radial_scale(const BasisSpec& spec, int n) {
  const auto f = radial_factor(spec);
  const auto p = f.poly();
  return std::exp(0.5 * ((2.0 * f.a + 2.0 * f.b + f.w + 1.0) * std::numbers::ln2 - log_norm_h(n, p)));
}

double radial_eval(const BasisSpec& spec, int n, double r) {
  const auto f = radial_factor(spec);
  return radial_scale(spec, n) * pow_or_one(1.0 - r, f.a) * pow_or_one(r, f.b) *
         jacobi_eval(n, f.poly(), 2.0 * r - 1.0);
}

double radial_derivative(const BasisSpec& spec, int n, double r) {
  const auto f = radial_factor(spec);
  const auto p = f.poly();
  const double x = 2.0 * r - 1.0;
  const double P = jacobi_eval(n, p, x);
  const double dP = 2.0 * jacobi_derivative(n, p, x);
  double value = pow_or_one(1.0 - r, f.a) * pow_or_one(r, f.b) * dP;
  if (f.a != 0.0) value -= f.a * pow_or_one(1.0 - r, f.a - 1.0) * pow_or_one(r, f.b) * P;
  if (f.b != 0.0) value += f.b * pow_or_one(1.0 - r, f.a) * pow_or_one(r, f.b - 1.0) * P;
  return radial_scale(spec, n) * value;
}

Complex wfunc_eval(const BasisSpec& spec, int n, int m, const PolarPoint& p) {
  if (spec.kind != BasisKind::WFunc || spec.d != 2) {
    throw UsageError("wfunc_eval requires a d = 2 W-function spec");
  }
  return radial_eval(spec, n, p.r) * std::polar(1.0 / std::sqrt(2.0 * kPi), m * p.theta);
}

Complex ball_basis_eval(const BasisSpec& spec, int n, std::span<const int> mvec, const BallPoint& p) {
  if (spec.kind != BasisKind::WFunc || spec.alpha != spec.beta) {
    throw UsageError("ball_basis_eval requires a W-function spec with beta == alpha");
  }
  if (mvec.size() != static_cast<std::size_t>(spec.d - 1) || p.theta.size() != mvec.size()) {
    throw UsageError("ball_basis_eval: angular index / angle vector length must be d-1");
  }
  return radial_eval(spec, n, p.r) * angular_mode(mvec, p.theta);
}

Complex ex1_basis_eval(int n, int m, const PolarPoint& p, double alpha) {
  if (!(alpha > 1.0)) throw ParameterError("ex1_basis_eval requires alpha > 1");
  const BasisSpec spec{alpha, 1.0, 2, n, 0, BasisKind::Ex1Weighted};
  return radial_eval(spec, n, p.r) * std::polar(1.0 / std::sqrt(2.0 * kPi), m * p.theta);
}

Complex zernike_eval(int n, int m, const PolarPoint& p) {
  return jacobi_eval(n, JacobiParams(0.0, 1.0), 2.0 * p.r - 1.0) * std::polar(1.0, m * p.theta);
}

Complex basis_eval(const BasisSpec& spec, int n, std::span<const int> k, double r,
                   std::span<const double> theta) {
  return radial_eval(spec, n, r) * angular_mode(k, theta);
}

Field disc_field(std::function<Complex(double, double)> f) {
  return [f = std::move(f)](double r, std::span<const double> theta) { return f(r, theta[0]); };
}

BoxQuadrature::BoxQuadrature(int d, InnerProductKind kind, int radial_nodes, int angular_nodes,
                             double radial_alpha, double radial_beta)
    : d_(d), angular_nodes_(angular_nodes) {
  if (radial_nodes < 1 || angular_nodes < 1) throw ParameterError("BoxQuadrature: resolution must be >= 1");
  const AngularGrid grid(d, angular_nodes);
  angular_size_ = grid.size();
  angular_weight_ = grid.weight();
  const auto rule = gauss_jacobi(radial_nodes, JacobiParams(radial_alpha, radial_beta));
  radial_.resize(rule.size());
  radial_weight_.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    const double r = 0.5 * (1.0 + x);
    double w = 0.5 * rule.weights[i] / (pow_or_one(1.0 - x, radial_alpha) * pow_or_one(1.0 + x, radial_beta));
    if (kind == InnerProductKind::Polar) w *= r;
    radial_[i] = r;
    radial_weight_[i] = w;
  }
}

double BoxQuadrature::radius(std::size_t i) const { return radial_[i / angular_size_]; }

void BoxQuadrature::angles(std::size_t i, std::span<double> theta) const {
  AngularGrid(d_, angular_nodes_).point(i % angular_size_, theta);
}

CVector BoxQuadrature::sample(const Field& f) const {
  const AngularGrid grid(d_, angular_nodes_);
  CVector out(size());
  std::vector<double> theta(static_cast<std::size_t>(d_ - 1));
  for (std::size_t i = 0; i < radial_.size(); ++i) {
    for (std::size_t a = 0; a < angular_size_; ++a) {
      grid.point(a, theta);
      out[i * angular_size_ + a] = f(radial_[i], theta);
    }
  }
  return out;
}

Complex BoxQuadrature::inner(std::span<const Complex> a, std::span<const Complex> b) const {
  if (a.size() != size() || b.size() != size()) throw UsageError("BoxQuadrature::inner: size mismatch");
  Complex total{};
  for (std::size_t i = 0; i < radial_.size(); ++i) {
    Complex row{};
    for (std::size_t j = 0; j < angular_size_; ++j) {
      const auto idx = i * angular_size_ + j;
      row += a[idx] * std::conj(b[idx]);
    }
    total += radial_weight_[i] * row;
  }
  return total * angular_weight_;
}

Complex inner_product(const Field& f, const Field& g, const InnerProductOptions& opts) {
  if (opts.resolution < 1) throw ParameterError("inner_product: resolution must be >= 1");
  const BoxQuadrature q(opts.d, opts.kind, opts.resolution, opts.resolution, opts.radial_alpha,
                        opts.radial_beta);
  const auto fs = q.sample(f);
  const auto gs = q.sample(g);
  return q.inner(fs, gs);
}

}  // namespace ballspec
