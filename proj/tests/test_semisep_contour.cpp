#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "ballspec/contour.hpp"
#include "ballspec/counting.hpp"
#include "ballspec/semisep.hpp"

using namespace ballspec;

namespace {

struct Gens {
  std::vector<SemiSep2::Gen> u, v, p, q;
  std::vector<double> diag;
};

Gens random_gens(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  Gens G;
  for (std::size_t i = 0; i < n; ++i) {
    G.u.push_back({g(rng), g(rng)});
    G.v.push_back({g(rng), g(rng)});
    G.p.push_back({g(rng), g(rng)});
    G.q.push_back({g(rng), g(rng)});
    G.diag.push_back(g(rng));
  }
  return G;
}

// Dense matrix straight from the definition.
Eigen::MatrixXd dense_from(const Gens& G, bool mask) {
  const auto n = static_cast<Eigen::Index>(G.diag.size());
  Eigen::MatrixXd A(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double x;
      if (i < j) x = G.u[i][0] * G.v[j][0] + G.u[i][1] * G.v[j][1];
      else if (i > j) x = G.p[i][0] * G.q[j][0] + G.p[i][1] * G.q[j][1];
      else x = G.diag[i];
      if (mask && (i + j) % 2 == 0) x = 0.0;
      A(i, j) = x;
    }
  }
  return A;
}

Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = Complex(g(rng), g(rng));
  Eigen::MatrixXcd H = (B + B.adjoint()) * (0.5 * scale / std::sqrt(double(n)));
  return H;
}

// exp(t A) v for Hermitian or skew-Hermitian A via the Hermitian eigensolver.
Eigen::VectorXcd expm_oracle(const Eigen::MatrixXcd& H, bool skew, double t, const Eigen::VectorXcd& v) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  Eigen::VectorXcd ph(H.rows());
  for (Eigen::Index k = 0; k < ph.size(); ++k) {
    const double mu = es.eigenvalues()[k];
    ph[k] = skew ? std::polar(1.0, t * mu) : Complex(std::exp(t * mu), 0.0);
  }
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint() * v;
}

}  // namespace

TEST_CASE("semisep matvec equals dense on seeded instances") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t n = 1 + inst % 37;
    const bool mask = inst % 2 == 0;
    auto G = random_gens(rng, n);
    const SemiSep2 A(G.u, G.v, G.p, G.q, G.diag, mask);
    const Eigen::MatrixXd D = dense_from(G, mask);
    CHECK((A.to_dense() - D).cwiseAbs().maxCoeff() == 0.0);
    CVector x(n);
    for (auto& e : x) e = Complex(g(rng), g(rng));
    const auto y = A.matvec(x);
    const Eigen::VectorXcd yd = D.cast<Complex>() * Eigen::Map<const Eigen::VectorXcd>(x.data(), n);
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(y[i] - yd[i]) / std::max(1.0, std::abs(yd[i])));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("semisep matvec cost is linear") {
  std::mt19937_64 rng(5);
  auto count = [&](std::size_t n, bool mask) {
    auto G = random_gens(rng, n);
    const SemiSep2 A(G.u, G.v, G.p, G.q, G.diag, mask);
    std::vector<CountingReal> x(n, CountingReal(1.0)), y(n);
    CountingReal::reset();
    A.matvec<CountingReal>(x, y);
    return static_cast<double>(CountingReal::multiplies());
  };
  for (bool mask : {false, true}) {
    const double c64 = count(64, mask), c128 = count(128, mask);
    CHECK(c128 / c64 <= 2.2);
    CHECK(c128 <= 10.0 * 128);
  }
}

TEST_CASE("skew instance, scaling and JSON") {
  std::vector<SemiSep2::Gen> p{{1, 0}, {2, 0}, {3, 0}, {4, 0}}, q{{5, 0}, {6, 0}, {7, 0}, {8, 0}};
  const auto A = SemiSep2::skew(p, q, true);
  const Eigen::MatrixXd D = A.to_dense();
  CHECK((D + D.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(D(1, 0) == 1 * 0 + 2 * 5);
  CHECK(D(2, 0) == 0.0);
  CHECK(D(3, 0) == 4 * 5);
  CHECK(D(0, 3) == -20);
  CHECK(A.scaled(2.0).entry(3, 0) == 40.0);
  const auto js = A.to_json();
  CHECK(js.find("\"parity_mask\"") != std::string::npos);
  CHECK(js.find("\"diag\"") != std::string::npos);
}

TEST_CASE("from_dense recovers rank-2 structure and rejects full rank") {
  std::mt19937_64 rng(11);
  auto G = random_gens(rng, 12);
  const Eigen::MatrixXd D = dense_from(G, false);
  const auto A = SemiSep2::from_dense(D);
  CHECK((A.to_dense() - D).cwiseAbs().maxCoeff() < 1e-10);
  Eigen::MatrixXd R = Eigen::MatrixXd::Random(12, 12);
  CHECK_THROWS_AS(SemiSep2::from_dense(R), NumericalError);
}

TEST_CASE("solve_shifted") {
  std::mt19937_64 rng(3);
  auto G = random_gens(rng, 20);
  const SemiSep2 A(G.u, G.v, G.p, G.q, G.diag, false);
  CVector b(20, Complex(1.0, -0.5));
  const Complex lam(50.0, 1.0);
  const auto x = solve_shifted(A, lam, b);
  const auto Ax = A.matvec(x);
  for (std::size_t i = 0; i < 20; ++i) CHECK(std::abs(lam * x[i] - Ax[i] - b[i]) < 1e-10);
  // singular shift: lambda = 0 for the zero matrix
  const SemiSep2 Z(std::vector<SemiSep2::Gen>(3, {0, 0}), std::vector<SemiSep2::Gen>(3, {0, 0}),
                   std::vector<SemiSep2::Gen>(3, {0, 0}), std::vector<SemiSep2::Gen>(3, {0, 0}), {0, 0, 0}, false);
  CVector b3(3, 1.0);
  CHECK_THROWS_AS(solve_shifted(Z, 0.0, b3), SolverError);
}

TEST_CASE("contour exponential matches the eigen oracle") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  for (int n : {4, 16, 32}) {
    for (bool skew : {false, true}) {
      const Eigen::MatrixXcd H = random_hermitian(rng, n, 3.0);
      const Eigen::MatrixXcd A = skew ? Eigen::MatrixXcd(Complex(0, 1) * H) : H;
      Eigen::VectorXcd v(n);
      for (auto& e : v) e = Complex(g(rng), g(rng));
      const CVector vv(v.data(), v.data() + n);
      const auto res = contour_apply([](Complex z) { return std::exp(z); }, A, vv, default_contour(A));
      const auto ref = expm_oracle(H, skew, 1.0, v);
      double err = 0.0;
      for (int i = 0; i < n; ++i) err = std::max(err, std::abs(res.value[i] - ref[i]));
      CHECK(err <= 1e-9 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
      for (double t : {0.1, 3.0, 25.0}) {
        const auto e = expm_apply(A, vv, t);
        const auto r = expm_oracle(H, skew, t, v);
        double err2 = 0.0;
        for (int i = 0; i < n; ++i) err2 = std::max(err2, std::abs(e.value[i] - r[i]));
        CHECK(err2 <= 1e-9 * std::max(1.0, r.cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST_CASE("contour on the semi-separable overload and other functions") {
  std::vector<SemiSep2::Gen> p{{1, 0}, {0.5, 0}, {0.3, 0}, {0.2, 0}, {0.1, 0}};
  std::vector<SemiSep2::Gen> q{{0.4, 0}, {0.6, 0}, {0.1, 0}, {0.9, 0}, {0.2, 0}};
  const auto S = SemiSep2::skew(p, q, false);
  const Eigen::MatrixXcd A = S.to_dense().cast<Complex>();
  CVector v{1, 2, 3, 4, 5};
  ContourSpec cs{0.0, 1.25 * spectral_radius(A) + 0.1, 32};
  const auto a = contour_apply([](Complex z) { return std::exp(z); }, S, v, cs);
  const auto b = contour_apply([](Complex z) { return std::exp(z); }, A, v, cs);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(a.value[i] - b.value[i]) < 1e-13);
  // g(z) = z^2 is a polynomial: exact once nodes exceed its degree
  const auto sq = contour_apply([](Complex z) { return z * z; }, A, v, cs);
  const Eigen::VectorXcd ref = A * A * Eigen::Map<const Eigen::VectorXcd>(v.data(), 5);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(sq.value[i] - ref[i]) < 1e-12);
}

TEST_CASE("contour errors") {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(3, 3) * 2.0;
  CVector v(3, 1.0);
  CHECK_THROWS_AS(contour_apply_fixed([](Complex z) { return z; }, A, v, ContourSpec{0.0, 1.0, 32}), ContourError);
  CHECK_THROWS_AS((ContourSpec{0.0, 1.0, 4}.validate()), ParameterError);
  // a node budget too small for a wide spectrum
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(2, 2);
  B(0, 0) = 40.0;
  B(1, 1) = -40.0;
  CHECK_THROWS_AS(contour_apply([](Complex z) { return std::exp(z); }, B, CVector(2, 1.0), default_contour(B), 64),
                  ContourError);
}

TEST_CASE("substep count") {
  CHECK(expm_substeps(1.0, 1.0) == 1);
  CHECK(expm_substeps(8.0, 1.0) == 5);
  CHECK(expm_substeps(8.0, -1.0) == 5);
  CHECK(expm_substeps(0.0, 100.0) == 1);
}
