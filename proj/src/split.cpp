#include "ballspec/split.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "ballspec/angular.hpp"

namespace ballspec {

TemplateProfile::TemplateProfile(TemplateKind kind) : kind_(kind) {
  switch (kind) {
    case TemplateKind::Linear:
      value_ = [](double r) { return 1.0 - r; };
      derivative_ = [](double) { return -1.0; };
      norm_ = 1.0 / std::sqrt(3.0);
      break;
    case TemplateKind::Cosine:
      value_ = [](double r) { return std::cos(0.5 * kPi * r); };
      derivative_ = [](double r) { return -0.5 * kPi * std::sin(0.5 * kPi * r); };
      norm_ = 1.0 / std::sqrt(2.0);
      break;
    case TemplateKind::Custom:
      throw UsageError("TemplateProfile: custom templates need value and derivative callables");
  }
}

TemplateProfile::TemplateProfile(std::function<double(double)> value, std::function<double(double)> derivative)
    : kind_(TemplateKind::Custom), value_(std::move(value)), derivative_(std::move(derivative)) {
  if (!value_ || !derivative_) throw ParameterError("TemplateProfile: missing callable");
  origin_ = value_(0.0);
  if (!(std::abs(origin_) > 0.0) || !std::isfinite(origin_)) {
    throw ParameterError("TemplateProfile: template must be nonzero at r = 0");
  }
  if (std::abs(value_(1.0)) > 1e-14 * std::abs(origin_)) {
    throw ParameterError("TemplateProfile: template must vanish at r = 1");
  }
  const RadialProfile raw{[this](double r) { return this->value(r); }, [this](double r) { return this->derivative(r); }};
  norm_ = std::sqrt(profile_norm2(raw));
}

RadialProfile TemplateProfile::unit() const {
  const double inv = 1.0 / norm_;
  auto v = value_;
  auto dv = derivative_;
  const double o = origin_;
  return RadialProfile{[v, o, inv](double r) { return v(r) / o * inv; },
                       [dv, o, inv](double r) { return dv(r) / o * inv; }};
}

double PosReport::max_residual() const { return std::max({sum, boundary, origin, orthogonality}); }

SplitPair SplitPair::from_fields(Field f, Field f0, Field f1, int d) {
  SplitPair pair{std::move(f), d, std::move(f0), std::move(f1), TemplateProfile(), nullptr, false, false};
  return pair;
}

namespace {

// Angular coefficients of f on a circle of radius r, with a one-entry cache.
class ModeSampler {
 public:
  ModeSampler(Field f, int d, int n, int K) : f_(std::move(f)), grid_(d, n), K_(K) {}

  CVector coeffs(double r) const {
    CVector samples(grid_.size());
    std::vector<double> theta(static_cast<std::size_t>(grid_.d() - 1));
    for (std::size_t a = 0; a < grid_.size(); ++a) {
      grid_.point(a, theta);
      samples[a] = f_(r, theta);
    }
    return grid_.analyze(samples, K_);
  }

  CVector cached(double r) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!has_ || r != last_r_) {
      last_ = coeffs(r);
      last_r_ = r;
      has_ = true;
    }
    return last_;
  }

 private:
  Field f_;
  AngularGrid grid_;
  int K_;
  mutable std::mutex mu_;
  mutable bool has_ = false;
  mutable double last_r_ = 0.0;
  mutable CVector last_;
};

}  // namespace

SplitPair make_pos(const Field& f, const TemplateProfile& tmpl, const SplitOptions& opts) {
  if (!f) throw ParameterError("make_pos: empty field");
  if (opts.d < 2 || opts.K < 0) throw ParameterError("make_pos: need d >= 2 and K >= 0");
  const int n_ang = opts.angular_samples > 0 ? opts.angular_samples : std::max(2 * opts.K + 2, 16);
  if (n_ang < 2 * opts.K + 1) throw ParameterError("make_pos: angular_samples below 2K+1");

  auto sampler = std::make_shared<ModeSampler>(f, opts.d, n_ang, opts.K);
  auto modes = std::make_shared<SplitModes>();
  modes->d = opts.d;
  modes->K = opts.K;
  modes->angular_samples = n_ang;
  modes->fcirc = sampler->coeffs(0.0);
  const std::size_t count = modes->fcirc.size();
  modes->c.assign(count, Complex{});
  modes->gamma.assign(count, Complex{});

  // Per-mode Gram-Schmidt integrals on [0, 1] (Gauss-Legendre).
  const auto rule = gauss_jacobi(opts.radial_nodes, JacobiParams(0.0, 0.0));
  std::vector<Complex> cross(count), n1(count, 0.0), nf(count, 0.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double r = 0.5 * (1.0 + rule.nodes[i]);
    const double w = 0.5 * rule.weights[i];
    const CVector F = sampler->coeffs(r);
    const double t = tmpl.value(r);
    for (std::size_t k = 0; k < count; ++k) {
      const Complex g0 = modes->fcirc[k] * t;
      const Complex g1 = F[k] - g0;
      cross[k] += w * g0 * std::conj(g1);
      n1[k] += w * std::norm(g1);
      nf[k] += w * std::norm(F[k]);
    }
  }
  // Threshold against the whole field: empty modes only hold FFT round-off.
  double scale = 1e-300;
  for (std::size_t k = 0; k < count; ++k) scale = std::max({scale, nf[k].real(), std::norm(modes->fcirc[k])});
  const double negligible = 1e-26 * scale;
  for (std::size_t k = 0; k < count; ++k) {
    if (n1[k].real() <= negligible) continue;  // f~1 vanishes on this mode
    modes->c[k] = cross[k] / n1[k].real();
    modes->gamma[k] = modes->c[k] / (1.0 + modes->c[k]);
  }

  SplitPair pair;
  pair.f = f;
  pair.d = opts.d;
  pair.tmpl = tmpl;

  // Degenerate split: nothing is left for f1 on any mode, and f has no content above K.
  bool degenerate = true;
  for (std::size_t k = 0; k < count; ++k) {
    if (n1[k].real() > negligible) degenerate = false;
  }

  std::shared_ptr<const SplitModes> cmodes = modes;
  const int d = opts.d;
  const int K = opts.K;
  Field f0 = [sampler, cmodes, tmpl, d, K](double r, std::span<const double> theta) {
    const CVector F = sampler->cached(r);
    const double t = tmpl.value(r);
    Complex total{};
    for (std::size_t k = 0; k < F.size(); ++k) {
      const Complex ck = cmodes->c[k];
      const Complex part = (1.0 + ck) * cmodes->fcirc[k] * t - ck * F[k];
      if (part == Complex{}) continue;
      const auto kv = angular_unflat(k, d, K);
      total += part * angular_mode(kv, theta);
    }
    return total;
  };
  if (degenerate) {
    // (f, 0): f is already affine on every resolved mode.
    pair.f0 = f;
    pair.f1 = [](double, std::span<const double>) { return Complex{}; };
    pair.degenerate = true;
    for (auto& c : modes->c) c = 0.0;
    for (auto& g : modes->gamma) g = 0.0;
  } else {
    pair.f0 = f0;
    pair.f1 = [f, f0](double r, std::span<const double> theta) { return f(r, theta) - f0(r, theta); };
  }
  pair.modes = cmodes;

  VerifyOptions vopts;
  vopts.angular_samples = n_ang;
  const auto rep = verify_pos(pair, vopts);
  pair.certified = rep.max_residual() <= 1e-8 * std::max(1.0, rep.norm_f2);
  return pair;
}

PosReport verify_pos(const SplitPair& pair, const VerifyOptions& opts) {
  PosReport rep;
  if (!pair.f || !pair.f0 || !pair.f1) throw UsageError("verify_pos: pair has empty fields");
  const int d = pair.d;
  const AngularGrid grid(d, opts.angular_samples);
  std::vector<double> theta(static_cast<std::size_t>(d - 1));

  for (std::size_t a = 0; a < grid.size(); ++a) {
    grid.point(a, theta);
    rep.boundary = std::max(rep.boundary, std::abs(pair.f0(1.0, theta)) + std::abs(pair.f1(1.0, theta)));
    rep.origin = std::max({rep.origin, std::abs(pair.f0(0.0, theta) - pair.f(0.0, theta)),
                           std::abs(pair.f1(0.0, theta))});
  }

  const BoxQuadrature q(d, InnerProductKind::Cartesian, opts.radial_nodes, opts.angular_samples);
  const auto fs = q.sample(pair.f);
  const auto f0s = q.sample(pair.f0);
  const auto f1s = q.sample(pair.f1);
  for (std::size_t i = 0; i < fs.size(); ++i) rep.sum = std::max(rep.sum, std::abs(f0s[i] + f1s[i] - fs[i]));
  rep.orthogonality = std::abs(q.inner(f0s, f1s));
  rep.norm_f2 = q.inner(fs, fs).real();
  rep.norm_f0_2 = q.inner(f0s, f0s).real();
  rep.norm_f1_2 = q.inner(f1s, f1s).real();
  return rep;
}

}  // namespace ballspec
