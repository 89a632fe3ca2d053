#include "ballspec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ballspec/angular.hpp"
#include "ballspec/contour.hpp"
#include "ballspec/diffmat.hpp"
#include "ballspec/expand.hpp"
#include "ballspec/pde.hpp"
#include "ballspec/split.hpp"

namespace ballspec {

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names = {"ex1", "ex2", "ex3", "ex4", "ex5", "ball3d", "pde-demo"};
  return names;
}

RunConfig resolve_defaults(const RunConfig& cfg) {
  RunConfig out = cfg;
  const auto& e = cfg.example;
  if (std::find(example_names().begin(), example_names().end(), e) == example_names().end()) {
    throw ParameterError("unknown example '" + e + "'");
  }
  int N = 6, K = 5;
  double alpha = 2.0, beta = 2.0;
  if (e == "ball3d") {
    N = 5;
    K = 3;
  } else if (e == "pde-demo") {
    N = 16;
    K = 4;
  }
  if (e == "ex1") beta = 1.0;
  if (e == "ex2") beta = 0.0;
  if (e == "ex4") alpha = beta = 1.0;
  if (!out.N) out.N = N;
  if (!out.K) out.K = K;
  if (!out.M) out.M = 6;
  if (!out.alpha) out.alpha = alpha;
  if (!out.beta) out.beta = beta;
  return out;
}

Complex disc_test_function(double r, double theta) {
  return (1.0 - r) * std::exp(r) * std::polar(1.0, theta + 0.5);
}

Complex ball_test_function(double r, double theta1, double theta2) {
  return (1.0 - r) * std::exp(r) * std::polar(1.0, 0.5 + theta1 + 2.0 * theta2);
}

namespace {

Field disc_f() {
  return [](double r, std::span<const double> th) { return disc_test_function(r, th[0]); };
}

Field ball_f() {
  return [](double r, std::span<const double> th) { return ball_test_function(r, th[0], th[1]); };
}

Check make_check(std::string name, double value, const std::string& rel, double threshold) {
  bool ok = false;
  if (rel == "<=") ok = value <= threshold;
  else if (rel == ">=") ok = value >= threshold;
  else if (rel == "<") ok = value < threshold;
  else if (rel == ">") ok = value > threshold;
  else if (rel == "==") ok = value == threshold;
  else throw UsageError("make_check: unknown relation " + rel);
  return Check{std::move(name), value, threshold, rel, ok};
}

Check range_check(std::string name, double value, double lo, double hi) {
  std::ostringstream rel;
  rel << "in[" << format_double(lo) << "," << format_double(hi) << "]";
  return Check{std::move(name), value, hi, rel.str(), value >= lo && value <= hi};
}

std::string str(double v) { return format_double(v); }

void add_params(ExampleReport& rep, const RunConfig& c) {
  rep.params = {{"N", std::to_string(*c.N)},      {"K", std::to_string(*c.K)},
                {"M", std::to_string(*c.M)},      {"alpha", str(*c.alpha)},
                {"beta", str(*c.beta)},           {"seed", std::to_string(c.seed)}};
}

// Nonzero coefficients; the scaled columns use 1-based numbering q+1.
Table coefficient_table(const std::vector<std::pair<std::size_t, double>>& nz) {
  Table t{"coefficients", {"q", "abs", "q_quarter_scaled", "q_scaled"}, {}};
  for (const auto& [q, a] : nz) {
    const double qp = static_cast<double>(q + 1);
    t.rows.push_back({static_cast<double>(q), a, std::pow(qp, 0.25) * a, qp * a});
  }
  return t;
}

Table sweep_table(const std::vector<SweepRow>& rows) {
  Table t{"errors", {"q", "e_inf", "e_2"}, {}};
  for (const auto& r : rows) t.rows.push_back({static_cast<double>(r.q), r.e_inf, r.e_2});
  return t;
}

std::vector<std::pair<std::size_t, double>> one_based(const std::vector<std::pair<std::size_t, double>>& nz) {
  std::vector<std::pair<std::size_t, double>> out;
  for (const auto& [q, a] : nz) out.emplace_back(q + 1, a);
  return out;
}

BasisSpec spec_of(const RunConfig& c, BasisKind kind, int d = 2) {
  BasisSpec s;
  s.alpha = *c.alpha;
  s.beta = *c.beta;
  s.d = d;
  s.N = *c.N;
  s.K = *c.K;
  s.kind = kind;
  s.validate();
  return s;
}

Table pos_table(const PosReport& r) {
  return Table{"pos_residuals",
               {"sum", "boundary", "origin", "orthogonality", "norm_f2", "norm_f0_2", "norm_f1_2"},
               {{r.sum, r.boundary, r.origin, r.orthogonality, r.norm_f2, r.norm_f0_2, r.norm_f1_2}}};
}

ExampleReport run_ex1(const RunConfig& c) {
  ExampleReport rep;
  rep.example = "ex1";
  add_params(rep, c);
  BasisSpec spec = spec_of(c, BasisKind::Ex1Weighted);
  spec.beta = 1.0;
  const auto f = disc_f();
  const auto coeffs = analyze_field(f, spec);
  const auto nz = nonzero_coefficients(coeffs);
  rep.tables.push_back(coefficient_table(nz));
  const auto sweep = error_sweep(f, coeffs, *c.M);
  rep.tables.push_back(sweep_table(sweep));

  const auto S = asymmetry_S_ex1(spec.N, spec.alpha);
  const Eigen::MatrixXd D = radial_diff_quadrature(spec);
  const Eigen::MatrixXd Sq = -(D + D.transpose());
  Table asym{"asymmetry", {"m", "n", "closed", "quadrature", "diff"}, {}};
  for (int m = 0; m <= spec.N; ++m) {
    for (int n = 0; n <= spec.N; ++n) asym.rows.push_back({double(m), double(n), S(m, n), Sq(m, n), S(m, n) - Sq(m, n)});
  }
  rep.tables.push_back(asym);
  const double smax = S.cwiseAbs().maxCoeff();
  rep.params.emplace_back("S_max", str(smax));
  rep.params.emplace_back("inner_product", "polar");
  rep.checks.push_back(make_check("S_matches_quadrature", (S - Sq).cwiseAbs().maxCoeff(), "<=", 1e-8));
  rep.checks.push_back(make_check("S00_closed_form_error", std::abs(S(0, 0) - (spec.alpha + 2.0)), "<=",
                                  1e-14 * (spec.alpha + 2.0)));
  rep.checks.push_back(make_check("S_max", smax, ">", 1.0));
  return rep;
}

ExampleReport run_ex2(const RunConfig& c) {
  ExampleReport rep;
  rep.example = "ex2";
  add_params(rep, c);
  const BasisSpec spec = spec_of(c, BasisKind::WFunc);
  const auto f = disc_f();
  const auto coeffs = analyze_field(f, spec);
  const auto nz = nonzero_coefficients(coeffs);
  rep.tables.push_back(coefficient_table(nz));
  rep.tables.push_back(sweep_table(error_sweep(f, coeffs, *c.M)));

  BasisSpec wide = spec;
  wide.N = std::max(spec.N, 10);
  const Eigen::MatrixXd D = radial_diff_quadrature(wide);
  const Eigen::MatrixXd A = -(D + D.transpose());
  Table asym{"asymmetry", {"n", "m", "closed", "quadrature", "diff"}, {}};
  double worst = 0.0;
  for (int n = 0; n <= wide.N; ++n) {
    for (int m = 0; m <= wide.N; ++m) {
      const double cf = asymmetry_beta0(n, m, spec.alpha);
      worst = std::max(worst, std::abs(cf - A(n, m)));
      asym.rows.push_back({double(n), double(m), cf, A(n, m), cf - A(n, m)});
    }
  }
  rep.tables.push_back(asym);
  rep.checks.push_back(make_check("asymmetry_00_error", std::abs(A(0, 0) - (spec.alpha + 1.0)), "<=", 1e-9));
  rep.checks.push_back(make_check("asymmetry_closed_vs_quadrature", worst, "<=", 1e-9));

  // The test function has the single Fourier mode m = 1: q = n(2K+1) + K + 1.
  double mismatches = 0.0;
  std::ostringstream one_based_set;
  for (std::size_t i = 0; i < nz.size(); ++i) {
    const auto expected = static_cast<std::size_t>(i) * (2 * spec.K + 1) + spec.K + 1;
    if (nz[i].first != expected) mismatches += 1.0;
    one_based_set << (i ? " " : "") << nz[i].first + 1;
  }
  if (nz.size() != static_cast<std::size_t>(spec.N + 1)) mismatches += 1.0;
  rep.params.emplace_back("q_set_one_based", one_based_set.str());
  rep.checks.push_back(make_check("nonzero_q_set_mismatches", mismatches, "==", 0.0));
  return rep;
}

ExampleReport run_ex3(const RunConfig& c) {
  ExampleReport rep;
  rep.example = "ex3";
  add_params(rep, c);
  const BasisSpec spec = spec_of(c, BasisKind::WFunc);
  const auto f = disc_f();
  const auto coeffs = analyze_field(f, spec);
  const auto nz = nonzero_coefficients(coeffs);
  rep.tables.push_back(coefficient_table(nz));
  const auto sweep = error_sweep(f, coeffs, *c.M);
  rep.tables.push_back(sweep_table(sweep));
  const auto fit = fit_loglog(one_based(nz));
  rep.params.emplace_back("loglog_r2", str(fit.r2));
  rep.checks.push_back(range_check("loglog_exponent", fit.slope, -0.4, -0.1));
  rep.checks.push_back(make_check("final_e_inf", sweep.back().e_inf, ">=", 1e-2));
  return rep;
}

ExampleReport run_split_example(const RunConfig& c, const std::string& name) {
  ExampleReport rep;
  rep.example = name;
  add_params(rep, c);
  const BasisSpec spec = spec_of(c, BasisKind::WFunc);
  const auto f = disc_f();
  SplitOptions so;
  so.K = spec.K;
  const auto pair = make_pos(f, TemplateProfile(TemplateKind::Linear), so);
  const auto pos = verify_pos(pair);
  rep.tables.push_back(pos_table(pos));
  const auto coeffs = analyze_disc(pair, spec);
  const auto nz = nonzero_coefficients(coeffs);
  rep.tables.push_back(coefficient_table(nz));
  const auto sweep = error_sweep(f, coeffs, *c.M);
  rep.tables.push_back(sweep_table(sweep));
  const std::size_t k1 = angular_flat(std::vector<int>{1}, spec.K);
  rep.params.emplace_back("gram_schmidt_c", str(pair.modes->c[k1].real()));
  rep.params.emplace_back("coefficient_count", std::to_string(coeffs.size()));
  rep.checks.push_back(make_check("pos_residual", pos.max_residual(), "<=", 1e-10));

  if (name == "ex4") {
    // Tail of log(q^{1/4} |f_q|) against log q.
    const auto pts = one_based(nz);
    const std::size_t tail = std::max<std::size_t>(3, (pts.size() + 1) / 2);
    const std::vector<std::pair<std::size_t, double>> tpts(pts.end() - static_cast<std::ptrdiff_t>(std::min(tail, pts.size())),
                                                           pts.end());
    const auto fit = fit_loglog(tpts);
    rep.params.emplace_back("loglog_exponent", str(fit.slope));
    rep.checks.push_back(make_check("quarter_scaled_tail_slope_abs", std::abs(fit.slope + 0.25), "<", 0.15));
    return rep;
  }

  // ex5: also record the printed pair (1-r)(2-e^r), 2(1-r)(e^r-1).
  const auto printed = SplitPair::from_fields(
      f,
      [](double r, std::span<const double> th) { return (1.0 - r) * (2.0 - std::exp(r)) * std::polar(1.0, th[0] + 0.5); },
      [](double r, std::span<const double> th) {
        return 2.0 * (1.0 - r) * (std::exp(r) - 1.0) * std::polar(1.0, th[0] + 0.5);
      });
  const auto pp = verify_pos(printed);
  Table pt = pos_table(pp);
  pt.name = "printed_pair_residuals";
  rep.tables.push_back(pt);
  rep.params.emplace_back("e_inf", str(sweep.back().e_inf));
  rep.checks.push_back(make_check("e_inf", sweep.back().e_inf, "<=", 1e-8));
  rep.checks.push_back(
      make_check("coefficient_count", double(coeffs.size()), "==", double((spec.N + 1) * (2 * spec.K + 1))));
  return rep;
}

ExampleReport run_ball3d(const RunConfig& c) {
  ExampleReport rep;
  rep.example = "ball3d";
  add_params(rep, c);
  BasisSpec spec = spec_of(c, BasisKind::WFunc, 3);
  if (spec.alpha != spec.beta) throw ParameterError("ball3d requires beta == alpha");
  const auto f = ball_f();
  SplitOptions so;
  so.d = 3;
  so.K = spec.K;
  const auto pair = make_pos(f, TemplateProfile(TemplateKind::Linear), so);
  const auto pos = verify_pos(pair);
  rep.tables.push_back(pos_table(pos));
  const auto coeffs = analyze_ball3(pair, spec);
  const auto nz = nonzero_coefficients(coeffs);
  rep.tables.push_back(coefficient_table(nz));
  const auto sweep = error_sweep(f, coeffs, *c.M);
  rep.tables.push_back(sweep_table(sweep));

  // Printed pair of the 3-D example: 2(1-r)(1-e^r), 2(1-r)(e^r-2).
  const auto printed = SplitPair::from_fields(
      f,
      [](double r, std::span<const double> th) {
        return 2.0 * (1.0 - r) * (1.0 - std::exp(r)) * std::polar(1.0, 0.5 + th[0] + 2.0 * th[1]);
      },
      [](double r, std::span<const double> th) {
        return 2.0 * (1.0 - r) * (std::exp(r) - 2.0) * std::polar(1.0, 0.5 + th[0] + 2.0 * th[1]);
      },
      3);
  VerifyOptions vo;
  vo.radial_nodes = 24;
  const auto pp = verify_pos(printed, vo);
  Table pt = pos_table(pp);
  pt.name = "printed_pair_residuals";
  rep.tables.push_back(pt);

  const auto fit = fit_loglinear(nz);
  rep.params.emplace_back("loglinear_slope", str(fit.slope));
  rep.params.emplace_back("coefficient_count", std::to_string(coeffs.size()));
  rep.checks.push_back(make_check("loglinear_slope", fit.slope, "<", 0.0));
  rep.checks.push_back(make_check("loglinear_r2", fit.r2, ">=", 0.9));
  rep.checks.push_back(make_check("e_inf", sweep.back().e_inf, "<=", 1e-6));
  rep.checks.push_back(make_check("pos_residual", pos.max_residual(), "<=", 1e-9));
  return rep;
}

CVector random_state(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  double s = 0.0;
  for (auto& x : v) {
    x = Complex(g(rng), g(rng));
    s += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(s);
  return v;
}

double norm2(const CVector& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

ExampleReport run_pde_demo(const RunConfig& c) {
  ExampleReport rep;
  rep.example = "pde-demo";
  add_params(rep, c);
  BasisSpec spec = spec_of(c, BasisKind::WFunc);
  if (!spec.closed_form_certified()) throw ParameterError("pde-demo requires alpha == beta > 0");
  const auto ops = build_diffops(spec);
  const TemplateProfile tmpl(TemplateKind::Linear);
  const auto comp = compound_radial(ops, tmpl.unit());
  const auto schr = assemble(PdeKind::Schrodinger, ops, comp);
  const auto diff = assemble(PdeKind::Diffusion, ops, comp);
  const auto diff1 = assemble(PdeKind::Diffusion, ops, comp, false);
  const double d2 = std::norm(comp.d_scalar);
  rep.params.emplace_back("d_scalar", str(comp.d_scalar.real()));

  std::mt19937_64 rng(c.seed);
  const std::vector<double> ts = {0.1, 1.0, 10.0};
  double drift = 0.0, growth = 0.0, contraction = 0.0;
  Table traj{"trajectory", {"state", "t", "schrodinger_norm", "diffusion_norm", "bound"}, {}};
  for (int s = 0; s < 50; ++s) {
    const auto v = random_state(rng, schr.dim());
    const auto v1 = random_state(rng, diff1.dim());
    for (double t : ts) {
      const double ns = norm2(propagate(schr, v, t));
      const double nd = norm2(propagate(diff, v, t));
      const double n1 = norm2(propagate(diff1, v1, t));
      drift = std::max(drift, std::abs(ns - 1.0));
      growth = std::max(growth, nd / std::exp(d2 * t));
      contraction = std::max(contraction, n1);
      if (s == 0) traj.rows.push_back({0.0, t, ns, nd, std::exp(d2 * t)});
    }
  }
  rep.tables.push_back(traj);
  rep.checks.push_back(make_check("schrodinger_norm_drift", drift, "<=", 1e-9));
  rep.checks.push_back(make_check("diffusion_growth_over_bound", growth, "<=", 1.0 + 1e-8));
  rep.checks.push_back(make_check("diffusion_f1_norm_ratio", contraction, "<=", 1.0 + 1e-10));

  // Contour and dense paths agree where the contour path is cheap.
  {
    const auto v = random_state(rng, schr.dim());
    const double t = 1e-3;
    const auto a = propagate(schr, v, t, PropagateMethod::Contour);
    const auto b = propagate(schr, v, t, PropagateMethod::Dense);
    double diffmax = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) diffmax = std::max(diffmax, std::abs(a[i] - b[i]));
    rep.checks.push_back(make_check("contour_vs_dense", diffmax, "<=", 1e-9));
  }

  const std::vector<int> Ns = {8, 16, 32};
  const auto rows = stability_sweep(PdeKind::Diffusion, spec, tmpl.unit(), Ns, ts);
  Table st{"stability", {"N", "t", "abscissa", "growth", "bound", "ok"}, {}};
  double worst_abscissa = -1e300;
  bool all_ok = true;
  for (const auto& r : rows) {
    st.rows.push_back({double(r.N), r.t, r.abscissa, r.growth, r.bound, r.ok ? 1.0 : 0.0});
    worst_abscissa = std::max(worst_abscissa, r.abscissa);
    all_ok = all_ok && r.ok;
  }
  rep.tables.push_back(st);
  rep.checks.push_back(make_check("abscissa_minus_d2", worst_abscissa - d2, "<=", 1e-12));
  rep.checks.push_back(make_check("stability_rows_ok", all_ok ? 1.0 : 0.0, "==", 1.0));

  // Negative control: beta = 0 (no skew symmetry), f1 block only.
  Table nc{"negative_control", {"N", "abscissa"}, {}};
  std::vector<double> abs_nc;
  for (int N : {4, 8, 16}) {
    BasisSpec b0 = spec;
    b0.beta = 0.0;
    b0.K = 0;
    b0.N = N;
    const auto op = assemble_negative_control(PdeKind::Diffusion, b0);
    abs_nc.push_back(spectral_abscissa(op));
    nc.rows.push_back({double(N), abs_nc.back()});
  }
  rep.tables.push_back(nc);
  const bool grows = abs_nc[1] > abs_nc[0] && abs_nc[2] > abs_nc[1] && abs_nc[0] > 0.0;
  rep.checks.push_back(make_check("negative_control_abscissa_grows", grows ? 1.0 : 0.0, "==", 1.0));

  // Self-convergence of diffusion from r^2 (1-r)^2 e^r (m = 0, f1 only, t = 0.01); reported, not asserted.
  Table sc{"self_convergence", {"N", "max_diff_to_previous"}, {}};
  std::vector<double> prev;
  for (int N : {8, 16, 32, 64}) {
    BasisSpec b = spec;
    b.N = N;
    b.K = 0;
    const Field u0 = [](double r, std::span<const double>) { return Complex(r * r * (1 - r) * (1 - r) * std::exp(r)); };
    auto coeffs = analyze_field(u0, b);
    const auto bops = build_diffops(b);
    const auto op = assemble(PdeKind::Diffusion, bops, compound_radial(bops, tmpl.unit()), false);
    coeffs.fhat = propagate(op, coeffs.fhat, 0.01);
    std::vector<double> cur;
    for (int i = 1; i < 40; ++i) {
      const double th[1] = {0.0};
      cur.push_back(synthesize(coeffs, i / 40.0, th).real());
    }
    double dmax = 0.0;
    for (std::size_t i = 0; i < prev.size(); ++i) dmax = std::max(dmax, std::abs(cur[i] - prev[i]));
    if (!prev.empty()) sc.rows.push_back({double(N), dmax});
    prev = std::move(cur);
  }
  rep.tables.push_back(sc);
  return rep;
}

}  // namespace

ExampleReport run_example(const RunConfig& cfg) {
  const RunConfig c = resolve_defaults(cfg);
  if (*c.M < 1) throw ParameterError("M must be >= 1");
  const auto& e = c.example;
  if (e == "ex1") return run_ex1(c);
  if (e == "ex2") return run_ex2(c);
  if (e == "ex3") return run_ex3(c);
  if (e == "ex4" || e == "ex5") return run_split_example(c, e);
  if (e == "ball3d") return run_ball3d(c);
  return run_pde_demo(c);
}

}  // namespace ballspec
