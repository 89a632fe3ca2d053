// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ballspec/contour.hpp"
#include "ballspec/counting.hpp"
#include "ballspec/diffmat.hpp"
#include "ballspec/expand.hpp"
#include "ballspec/experiments.hpp"
#include "ballspec/pde.hpp"
#include "ballspec/semisep.hpp"
#include "ballspec/split.hpp"
#include "oracle.hpp"

using namespace ballspec;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("%s  [%2d] %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Field disc_f() {
  return [](double r, std::span<const double> th) { return disc_test_function(r, th[0]); };
}

CVector random_unit(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  CVector v(n);
  double s = 0.0;
  for (auto& x : v) {
    x = Complex(g(rng), g(rng));
    s += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(s);
  return v;
}

double norm(const CVector& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto D = build_Dr(64, 2.0).to_dense();
  const double skew = (D + D.transpose()).cwiseAbs().maxCoeff();
  BasisSpec s;
  s.N = 64;
  const auto Q = radial_diff_quadrature(s);
  const double qskew = (Q + Q.transpose()).cwiseAbs().maxCoeff();
  const double t = seconds_since(t0);
  report(1, skew == 0.0 && qskew <= 1e-10 && t < 5.0,
         fmt("skew symmetry N=64: max|D+D^T| = %.3g (== 0), quadrature %.3g (<= 1e-10), %.2fs (< 5s)", skew, qskew, t));
}

void criterion2() {
  const int N = 16;
  const double a = 2.0;
  const auto D = build_Dr(N, a).to_dense();
  // I_nk = \int (1-x^2)^2 P~_n' P~_k dx by Gauss-Jacobi (2, 2) with textbook polynomials.
  const auto rule = gauss_jacobi(N + 4, JacobiParams(a, a));
  Eigen::MatrixXd I = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    for (int n = 0; n <= N; ++n) {
      const double dn = oracle::jacobi_d(n, a, a, x) / std::sqrt(oracle::jacobi_h(n, a, a));
      for (int k = 0; k <= N; ++k)
        I(n, k) += rule.weights[i] * dn * oracle::jacobi(k, a, a, x) / std::sqrt(oracle::jacobi_h(k, a, a));
    }
  }
  const double err = (D - 0.5 * (I - I.transpose())).cwiseAbs().maxCoeff();
  report(2, err <= 1e-10, fmt("closed form vs Gauss-Jacobi skew part (I - I^T)/2, N=16: max err %.3g (<= 1e-10)", err));
}

void criterion3() {
  const double a = 2.0;
  const auto S = asymmetry_S_ex1(6, a);
  BasisSpec s;
  s.kind = BasisKind::Ex1Weighted;
  s.alpha = a;
  s.N = 6;
  const auto Q = radial_diff_quadrature(s);
  const double err = (S + Q + Q.transpose()).cwiseAbs().maxCoeff();
  report(3, err <= 1e-8 && S(0, 0) == 4.0,
         fmt("Example 1 polar S vs -(D+D^T): max err %.3g (<= 1e-8); S_00 = %.17g (== 4)", err, S(0, 0)));
}

void criterion4() {
  const double a = 2.0;
  BasisSpec s;
  s.alpha = a;
  s.beta = 0.0;
  s.N = 10;
  const auto Q = radial_diff_quadrature(s);
  double err = 0.0;
  for (int n = 0; n <= 10; ++n)
    for (int m = 0; m <= 10; ++m) {
      const double ref = ((n + m) % 2 ? -1.0 : 1.0) * std::sqrt((a + 2 * n + 1) * (a + 2 * m + 1));
      err = std::max(err, std::abs(-(Q(n, m) + Q(m, n)) - ref));
    }
  report(4, err <= 1e-9, fmt("Example 2 asymmetry vs (-1)^{n+m} sqrt((a+2n+1)(a+2m+1)), n,m<=10: max err %.3g (<= 1e-9)", err));
}

void criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  BasisSpec s;
  const auto pair = make_pos(disc_f(), TemplateProfile(TemplateKind::Linear));
  const auto c = analyze_disc(pair, s);
  const auto er = error_report(disc_f(), c, 6);
  const double t = seconds_since(t0);
  report(5, er.e_inf <= 1e-8 && c.size() == 77 && t < 10.0,
         fmt("Example 5 POS: e_inf = %.3g (<= 1e-8) with %.0f coefficients (== 77), %.2fs (< 10s)", er.e_inf,
             double(c.size()), t));
}

void criterion6() {
  BasisSpec s;
  const auto c = analyze_field(disc_f(), s);
  std::vector<std::pair<std::size_t, double>> pts;
  for (const auto& [q, v] : nonzero_coefficients(c)) pts.emplace_back(q + 1, v);
  const auto fit = fit_loglog(pts);
  const double einf = error_report(disc_f(), c, 6).e_inf;
  report(6, fit.slope >= -0.4 && fit.slope <= -0.1 && einf >= 1e-2,
         fmt("Example 3 decay: log-log exponent %.4f (in [-0.4, -0.1]), e_inf = %.3g (>= 1e-2)", fit.slope, einf));
}

struct PdeSetup {
  DiffOpSet ops;
  CompoundOp comp;
};

void criterion7_8() {
  BasisSpec s;
  s.N = 16;
  s.K = 4;
  const auto ops = build_diffops(s);
  const auto comp = compound_radial(ops, TemplateProfile().unit());
  const auto S = assemble(PdeKind::Schrodinger, ops, comp);
  const auto D = assemble(PdeKind::Diffusion, ops, comp);
  const auto D1 = assemble(PdeKind::Diffusion, ops, comp, false);
  const double d2 = std::norm(comp.d_scalar);
  std::mt19937_64 rng(12345);
  double drift = 0.0, growth = 0.0, contraction = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto v = random_unit(rng, S.dim());
    const auto v1 = random_unit(rng, D1.dim());
    for (double t : {0.1, 1.0, 10.0}) {
      drift = std::max(drift, std::abs(norm(propagate(S, v, t)) - 1.0));
      growth = std::max(growth, norm(propagate(D, v, t)) / std::exp(d2 * t));
      contraction = std::max(contraction, norm(propagate(D1, v1, t)));
    }
  }
  report(7, drift <= 1e-9, fmt("unitarity, 50 states x t in {0.1,1,10}, N=16 K=4: max drift %.3g (<= 1e-9)", drift));
  report(8, growth <= 1.0 + 1e-8 && contraction <= 1.0,
         fmt("diffusion: max growth / e^{|d|^2 t} = %.6f (<= 1+1e-8); f1-only max norm ratio %.6f (<= 1)", growth,
             contraction));
}

void criterion9() {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  auto gens = [&](std::size_t n) {
    std::vector<SemiSep2::Gen> u(n), v(n), p(n), q(n);
    std::vector<double> dg(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = {g(rng), g(rng)};
      v[i] = {g(rng), g(rng)};
      p[i] = {g(rng), g(rng)};
      q[i] = {g(rng), g(rng)};
      dg[i] = g(rng);
    }
    return std::make_tuple(u, v, p, q, dg);
  };
  double worst = 0.0;
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t n = 2 + inst % 63;
    const bool mask = inst % 3 == 0;
    auto [u, v, p, q, dg] = gens(n);
    const SemiSep2 A(u, v, p, q, dg, mask);
    // dense straight from the generators
    Eigen::MatrixXd M(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double x = i < j ? u[i][0] * v[j][0] + u[i][1] * v[j][1]
                 : i > j ? p[i][0] * q[j][0] + p[i][1] * q[j][1]
                         : dg[i];
        if (mask && (i + j) % 2 == 0) x = 0.0;
        M(i, j) = x;
      }
    CVector x(n);
    for (auto& e : x) e = Complex(g(rng), g(rng));
    const auto y = A.matvec(x);
    const Eigen::VectorXcd yd = M.cast<Complex>() * Eigen::Map<const Eigen::VectorXcd>(x.data(), n);
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(y[i] - yd[i]) / std::max(1.0, std::abs(yd[i])));
  }
  auto count = [&](std::size_t n) {
    auto [u, v, p, q, dg] = gens(n);
    const SemiSep2 A(u, v, p, q, dg, true);
    std::vector<CountingReal> xs(n, CountingReal(1.0)), ys(n);
    CountingReal::reset();
    A.matvec<CountingReal>(xs, ys);
    return static_cast<double>(CountingReal::multiplies());
  };
  const double ratio = count(128) / count(64);
  report(9, worst <= 1e-12 && ratio <= 2.2,
         fmt("semi-separable matvec: 200 instances max rel err %.3g (<= 1e-12); multiplies 64->128 ratio %.3f (<= 2.2)",
             worst, ratio));
}

void criterion10() {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int n : {2, 8, 16, 32}) {
    for (bool skew : {false, true}) {
      Eigen::MatrixXcd B(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = Complex(g(rng), g(rng));
      const Eigen::MatrixXcd H = (B + B.adjoint()) * (1.5 / std::sqrt(double(n)));
      const Eigen::MatrixXcd A = skew ? Eigen::MatrixXcd(Complex(0, 1) * H) : H;
      Eigen::VectorXcd v(n);
      for (auto& e : v) e = Complex(g(rng), g(rng));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
      Eigen::VectorXcd ph(n);
      for (int k = 0; k < n; ++k) {
        const double mu = es.eigenvalues()[k];
        ph[k] = skew ? std::polar(1.0, mu) : Complex(std::exp(mu), 0.0);
      }
      const Eigen::VectorXcd ref = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint() * v;
      const CVector vv(v.data(), v.data() + n);
      const auto res = contour_apply([](Complex z) { return std::exp(z); }, A, vv, default_contour(A));
      double err = 0.0;
      for (int i = 0; i < n; ++i) err = std::max(err, std::abs(res.value[i] - ref[i]));
      worst = std::max(worst, err / std::max(1.0, ref.cwiseAbs().maxCoeff()));
    }
  }
  report(10, worst <= 1e-9, fmt("Dunford exp vs eigendecomposition, Hermitian/skew-Hermitian n<=32: max err %.3g (<= 1e-9)", worst));
}

void criterion11() {
  BasisSpec s;
  s.d = 3;
  s.N = 5;
  s.K = 3;
  const Field f = [](double r, std::span<const double> th) { return ball_test_function(r, th[0], th[1]); };
  SplitOptions o;
  o.d = 3;
  o.K = 3;
  const auto pair = make_pos(f, TemplateProfile(), o);
  const auto c = analyze_ball3(pair, s);
  const auto fit = fit_loglinear(nonzero_coefficients(c));
  const double einf = error_report(f, c, 6).e_inf;
  report(11, fit.slope < 0.0 && fit.r2 >= 0.9 && einf <= 1e-6,
         fmt("3-D ball: log-linear slope %.4f (< 0), R^2 = %.4f (>= 0.9), e_inf = %.3g (<= 1e-6)", fit.slope, fit.r2,
             einf));
}

void guarded(int id, const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, false, std::string("threw: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded(1, criterion1);
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7_8);
  guarded(9, criterion9);
  guarded(10, criterion10);
  guarded(11, criterion11);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
