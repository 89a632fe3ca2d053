#include "ballspec/expand.hpp"

#include <algorithm>
#include <cmath>

#include "ballspec/angular.hpp"

namespace ballspec {

namespace {

std::size_t angular_size(const BasisSpec& spec) { return angular_count(spec.d, spec.K); }

double pow_or_one(double base, double e) {
  if (e == 0.0) return 1.0;
  if (base <= 0.0) return 0.0;
  return std::pow(base, e);
}

// Radial projections of per-radius angular coefficients F(r) onto R_n, using Gauss-Jacobi with
// the basis factor (1-r)^a r^b and the polar weight r^w folded into the rule.
template <class Coeffs>
CVector radial_project(const BasisSpec& spec, const AnalysisOptions& opts, Coeffs&& coeffs_at) {
  const auto f = radial_factor(spec);
  const auto poly = f.poly();
  const int nquad = opts.radial_nodes > 0 ? opts.radial_nodes : spec.N + quad_padding();
  const double ea = f.a;
  const double eb = f.b + f.w;
  const auto rule = gauss_jacobi(nquad, JacobiParams(ea, eb));
  const double jac = std::pow(2.0, -(ea + eb + 1.0));
  const std::size_t A = angular_size(spec);

  std::vector<double> scale(static_cast<std::size_t>(spec.N + 1));
  for (int n = 0; n <= spec.N; ++n) scale[n] = radial_scale(spec, n);

  CVector fhat(spec.coefficient_count());
  std::vector<double> P(static_cast<std::size_t>(spec.N + 1));
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    const double r = 0.5 * (1.0 + x);
    const CVector F = coeffs_at(r);
    jacobi_eval_all(poly, x, P);
    const double w = rule.weights[i] * jac;
    for (int n = 0; n <= spec.N; ++n) {
      const double rn = w * scale[n] * P[n];
      for (std::size_t k = 0; k < A; ++k) fhat[static_cast<std::size_t>(n) * A + k] += rn * F[k];
    }
  }
  return fhat;
}

CVector angular_coeffs(const Field& f, const AngularGrid& grid, int K, double r) {
  CVector samples(grid.size());
  std::vector<double> theta(static_cast<std::size_t>(grid.d() - 1));
  for (std::size_t a = 0; a < grid.size(); ++a) {
    grid.point(a, theta);
    samples[a] = f(r, theta);
  }
  return grid.analyze(samples, K);
}

int angular_samples_for(const BasisSpec& spec, const AnalysisOptions& opts) {
  const int n = opts.angular_samples > 0 ? opts.angular_samples : std::max(2 * spec.K + 2, 16);
  if (n < 2 * spec.K + 1) throw ParameterError("analysis: angular_samples below 2K+1");
  return n;
}

}  // namespace

std::size_t flatten_index(int n, int m, const BasisSpec& spec) {
  if (spec.d != 2) throw UsageError("flatten_index(n, m): spec must be two-dimensional");
  const int k[1] = {m};
  return flatten_index(n, k, spec);
}

std::size_t flatten_index(int n, std::span<const int> k, const BasisSpec& spec) {
  if (n < 0 || n > spec.N) throw ParameterError("flatten_index: radial index out of range");
  if (k.size() != static_cast<std::size_t>(spec.d - 1)) throw ParameterError("flatten_index: angular index length");
  return static_cast<std::size_t>(n) * angular_size(spec) + angular_flat(k, spec.K);
}

std::pair<int, int> unflatten_index(std::size_t q, const BasisSpec& spec) {
  if (spec.d != 2) throw UsageError("unflatten_index: spec must be two-dimensional");
  const auto [n, k] = unflatten_index_nd(q, spec);
  return {n, k[0]};
}

std::pair<int, std::vector<int>> unflatten_index_nd(std::size_t q, const BasisSpec& spec) {
  if (q >= spec.coefficient_count()) throw ParameterError("unflatten_index: q out of range");
  const std::size_t A = angular_size(spec);
  return {static_cast<int>(q / A), angular_unflat(q % A, spec.d, spec.K)};
}

CoeffTensor analyze_field(const Field& f, const BasisSpec& spec, const AnalysisOptions& opts) {
  spec.validate();
  if (!f) throw ParameterError("analyze_field: empty field");
  const AngularGrid grid(spec.d, angular_samples_for(spec, opts));
  CoeffTensor out;
  out.spec = spec;
  out.fhat = radial_project(spec, opts, [&](double r) { return angular_coeffs(f, grid, spec.K, r); });
  return out;
}

CoeffTensor analyze_split(const SplitPair& pair, const BasisSpec& spec, const AnalysisOptions& opts) {
  spec.validate();
  if (spec.kind != BasisKind::WFunc) throw UsageError("analyze_split: spec must be a W-function basis");
  if (!pair.certified || !pair.modes) {
    throw UsageError("analyze_split: pair is not a certified make_pos split");
  }
  if (pair.d != spec.d || pair.modes->d != spec.d) throw UsageError("analyze_split: dimension mismatch");
  if (pair.modes->K < spec.K) throw UsageError("analyze_split: split bandwidth below spec.K");

  const auto& modes = *pair.modes;
  const AngularGrid grid(spec.d, angular_samples_for(spec, opts));
  const std::size_t A = angular_size(spec);

  // Position of each spec angular index inside the split's (possibly wider) mode list.
  std::vector<std::size_t> map(A);
  for (std::size_t k = 0; k < A; ++k) map[k] = angular_flat(angular_unflat(k, spec.d, spec.K), modes.K);

  CoeffTensor out;
  out.spec = spec;
  out.has_affine = true;
  out.tmpl = pair.tmpl;
  out.fcirc.resize(A);
  out.gamma.resize(A);
  for (std::size_t k = 0; k < A; ++k) {
    out.fcirc[k] = modes.fcirc[map[k]];
    out.gamma[k] = modes.gamma[map[k]];
  }
  if (pair.degenerate) {
    out.fhat.assign(spec.coefficient_count(), Complex{});
    return out;
  }
  // f1_k(r) = (1 + c_k) (f_k(r) - f_k(0) T(r)) on the split modes.
  out.fhat = radial_project(spec, opts, [&](double r) {
    CVector F = angular_coeffs(pair.f, grid, spec.K, r);
    const double t = pair.tmpl.value(r);
    for (std::size_t k = 0; k < A; ++k) F[k] = (1.0 + modes.c[map[k]]) * (F[k] - out.fcirc[k] * t);
    return F;
  });
  return out;
}

CoeffTensor analyze_disc(const SplitPair& pair, const BasisSpec& spec, const AnalysisOptions& opts) {
  if (spec.d != 2) throw UsageError("analyze_disc: spec must be two-dimensional");
  return analyze_split(pair, spec, opts);
}

CoeffTensor analyze_ball3(const SplitPair& pair, const BasisSpec& spec, const AnalysisOptions& opts) {
  if (spec.d != 3) throw UsageError("analyze_ball3: spec must be three-dimensional");
  return analyze_split(pair, spec, opts);
}

Complex synthesize(const CoeffTensor& c, double r, std::span<const double> theta) {
  const auto& spec = c.spec;
  const std::size_t A = angular_size(spec);
  if (c.fhat.size() != spec.coefficient_count()) throw UsageError("synthesize: tensor size mismatch");
  if (theta.size() != static_cast<std::size_t>(spec.d - 1)) throw UsageError("synthesize: angle count");

  const auto f = radial_factor(spec);
  const auto poly = f.poly();
  std::vector<double> P(static_cast<std::size_t>(spec.N + 1));
  jacobi_eval_all(poly, 2.0 * r - 1.0, P);
  const double env = pow_or_one(1.0 - r, f.a) * pow_or_one(r, f.b);
  std::vector<double> R(P.size());
  for (int n = 0; n <= spec.N; ++n) R[n] = radial_scale(spec, n) * env * P[n];

  const double t = c.has_affine ? c.tmpl.value(r) : 0.0;
  Complex total{};
  for (std::size_t k = 0; k < A; ++k) {
    Complex w{};
    for (int n = 0; n <= spec.N; ++n) w += c.fhat[static_cast<std::size_t>(n) * A + k] * R[n];
    Complex radial = w;
    if (c.has_affine) radial = c.fcirc[k] * t + (1.0 - c.gamma[k]) * w;
    if (radial == Complex{}) continue;
    total += radial * angular_mode(angular_unflat(k, spec.d, spec.K), theta);
  }
  return total;
}

CVector synthesize(const CoeffTensor& c, std::span<const BallPoint> points) {
  CVector out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = synthesize(c, points[i].r, points[i].theta);
  return out;
}

CoeffTensor truncate(const CoeffTensor& c, std::size_t keep) {
  CoeffTensor out = c;
  for (std::size_t q = keep; q < out.fhat.size(); ++q) out.fhat[q] = Complex{};
  return out;
}

std::vector<BallPoint> error_grid(int d, int M) {
  if (M < 1) throw ParameterError("error_grid: M must be >= 1");
  if (d < 2) throw ParameterError("error_grid: d must be >= 2");
  std::size_t angular = 1;
  for (int j = 0; j < d - 1; ++j) angular *= static_cast<std::size_t>(M + 1);
  std::vector<BallPoint> pts;
  pts.reserve(angular * static_cast<std::size_t>(M + 1));
  for (int m = 0; m <= M; ++m) {
    const double s = std::sin(m * kPi / (2.0 * M));
    const double r = s * s;
    for (std::size_t a = 0; a < angular; ++a) {
      BallPoint p{r, std::vector<double>(static_cast<std::size_t>(d - 1))};
      std::size_t idx = a;
      for (int j = d - 2; j >= 0; --j) {
        const int l = static_cast<int>(idx % static_cast<std::size_t>(M + 1));
        idx /= static_cast<std::size_t>(M + 1);
        p.theta[static_cast<std::size_t>(j)] = (j == 0) ? -kPi + 2.0 * l * kPi / M : l * kPi / M;
      }
      pts.push_back(std::move(p));
    }
  }
  return pts;
}

std::vector<std::pair<std::size_t, double>> nonzero_coefficients(const CoeffTensor& c, double rel_tol) {
  double mx = 0.0;
  for (const auto& v : c.fhat) mx = std::max(mx, std::abs(v));
  std::vector<std::pair<std::size_t, double>> out;
  if (mx == 0.0) return out;
  for (std::size_t q = 0; q < c.fhat.size(); ++q) {
    const double a = std::abs(c.fhat[q]);
    if (a > rel_tol * mx) out.emplace_back(q, a);
  }
  return out;
}

namespace {

std::pair<double, double> grid_errors(const CVector& approx, const CVector& exact) {
  double einf = 0.0, e2 = 0.0;
  for (std::size_t i = 0; i < approx.size(); ++i) {
    const double e = std::abs(approx[i] - exact[i]);
    einf = std::max(einf, e);
    e2 += e * e;
  }
  return {einf, std::sqrt(e2)};
}

CVector sample_field(const Field& f, const std::vector<BallPoint>& pts) {
  CVector out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = f(pts[i].r, pts[i].theta);
  return out;
}

}  // namespace

ErrorReport error_report(const Field& f, const CoeffTensor& c, int M) {
  const auto pts = error_grid(c.spec.d, M);
  const auto exact = sample_field(f, pts);
  const auto approx = synthesize(c, pts);
  ErrorReport rep;
  std::tie(rep.e_inf, rep.e_2) = grid_errors(approx, exact);
  rep.grid_M = M;
  rep.coeff_decay = nonzero_coefficients(c);
  return rep;
}

std::vector<SweepRow> error_sweep(const Field& f, const CoeffTensor& c, int M) {
  const auto pts = error_grid(c.spec.d, M);
  const auto exact = sample_field(f, pts);
  const auto& spec = c.spec;
  const std::size_t A = angular_size(spec);
  const auto fac = radial_factor(spec);
  const auto poly = fac.poly();

  // Per point: affine part and the contribution of each single coefficient; sweep by prefix sums.
  std::vector<CVector> contrib(pts.size(), CVector(c.size()));
  CVector base(pts.size());
  std::vector<double> P(static_cast<std::size_t>(spec.N + 1));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double r = pts[i].r;
    jacobi_eval_all(poly, 2.0 * r - 1.0, P);
    const double env = pow_or_one(1.0 - r, fac.a) * pow_or_one(r, fac.b);
    const double t = c.has_affine ? c.tmpl.value(r) : 0.0;
    for (std::size_t k = 0; k < A; ++k) {
      const Complex ek = angular_mode(angular_unflat(k, spec.d, spec.K), pts[i].theta);
      const Complex wscale = c.has_affine ? (1.0 - c.gamma[k]) : Complex(1.0);
      if (c.has_affine) base[i] += c.fcirc[k] * t * ek;
      for (int n = 0; n <= spec.N; ++n) {
        const std::size_t q = static_cast<std::size_t>(n) * A + k;
        contrib[i][q] = c.fhat[q] * radial_scale(spec, n) * env * P[n] * wscale * ek;
      }
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(c.size());
  CVector approx = base;
  for (std::size_t q = 0; q < c.size(); ++q) {
    for (std::size_t i = 0; i < pts.size(); ++i) approx[i] += contrib[i][q];
    const auto [einf, e2] = grid_errors(approx, exact);
    rows.push_back({q + 1, einf, e2});
  }
  return rows;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw UsageError("fit_line: size mismatch");
  LinearFit fit;
  fit.count = x.size();
  if (x.size() < 2) return fit;
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

LinearFit fit_loglog(std::span<const std::pair<std::size_t, double>> pts) {
  std::vector<double> x, y;
  for (const auto& [q, v] : pts) {
    if (q < 1 || !(v > 0.0)) throw ParameterError("fit_loglog: need q >= 1 and positive values");
    x.push_back(std::log(static_cast<double>(q)));
    y.push_back(std::log(v));
  }
  return fit_line(x, y);
}

LinearFit fit_loglinear(std::span<const std::pair<std::size_t, double>> pts) {
  std::vector<double> x, y;
  for (const auto& [q, v] : pts) {
    if (!(v > 0.0)) throw ParameterError("fit_loglinear: values must be positive");
    x.push_back(static_cast<double>(q));
    y.push_back(std::log10(v));
  }
  return fit_line(x, y);
}

}  // namespace ballspec
