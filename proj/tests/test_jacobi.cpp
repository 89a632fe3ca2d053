#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "ballspec/jacobi.hpp"
#include "ballspec/types.hpp"
#include "oracle.hpp"

using namespace ballspec;

TEST_CASE("jacobi_eval matches the explicit sum") {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0, 0}, {2, 2}, {1, 1}, {2, 0}, {4, 3}, {0.5, 1.5}}) {
    const JacobiParams p(a, b);
    for (int n = 0; n <= 12; ++n) {
      for (double x : {-1.0, -0.7, -0.1, 0.0, 0.33, 0.9, 1.0}) {
        const double ref = oracle::jacobi(n, a, b, x);
        CHECK(jacobi_eval(n, p, x) == doctest::Approx(ref).epsilon(1e-11).scale(1.0));
        CHECK(jacobi_derivative(n, p, x) == doctest::Approx(oracle::jacobi_d(n, a, b, x)).epsilon(1e-11).scale(1.0));
      }
    }
  }
}

TEST_CASE("low degrees by hand") {
  const JacobiParams p(2, 2);
  CHECK(jacobi_eval(0, p, 0.3) == 1.0);
  // P_1 = (a+1) + (a+b+2)(x-1)/2
  CHECK(jacobi_eval(1, p, 0.3) == doctest::Approx(3.0 + 3.0 * (0.3 - 1.0)));
  CHECK(jacobi_eval(1, JacobiParams(0, 0), 0.3) == doctest::Approx(0.3));
  CHECK(jacobi_eval(2, JacobiParams(0, 0), 0.3) == doctest::Approx(1.5 * 0.09 - 0.5));
}

TEST_CASE("norm_h") {
  for (double a : {0.0, 1.0, 2.0, 3.5}) {
    for (double b : {0.0, 1.0, 2.0}) {
      for (int n = 0; n <= 20; ++n) {
        CHECK(norm_h(n, JacobiParams(a, b)) == doctest::Approx(oracle::jacobi_h(n, a, b)).epsilon(1e-12));
      }
    }
  }
  // Legendre: 2/(2n+1)
  CHECK(norm_h(5, JacobiParams(0, 0)) == doctest::Approx(2.0 / 11.0));
  CHECK(log_norm_h(300, JacobiParams(2, 2)) == doctest::Approx(std::log(oracle::jacobi_h(300, 2, 2))).epsilon(1e-12));
}

TEST_CASE("jacobi_eval_all agrees with single evaluations") {
  const JacobiParams p(1.5, 0.5);
  std::vector<double> out(9);
  jacobi_eval_all(p, 0.2, out);
  for (int n = 0; n < 9; ++n) CHECK(out[n] == doctest::Approx(jacobi_eval(n, p, 0.2)));
}

TEST_CASE("gauss_jacobi integrates weighted polynomials exactly") {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0, 0}, {2, 2}, {4, 1}, {0.5, 2.5}}) {
    const JacobiParams p(a, b);
    const auto rule = gauss_jacobi(10, p);
    REQUIRE(rule.size() == 10);
    for (std::size_t i = 1; i < rule.size(); ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    for (double w : rule.weights) CHECK(w > 0.0);
    // \int (1-x)^a (1+x)^b x^k dx by the explicit Gauss-Legendre oracle, a and b integral or not.
    for (int k = 0; k <= 19; ++k) {
      double q = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) q += rule.weights[i] * std::pow(rule.nodes[i], k);
      const double ref = oracle::integrate_pm1(
          [&](double s) {
            // x = sin(pi s / 2) on [-1,1] regularises both endpoints
            const double x = std::sin(std::numbers::pi * s / 2.0);
            return std::pow(1.0 - x, a) * std::pow(1.0 + x, b) * std::pow(x, k) * std::numbers::pi / 2.0 *
                   std::cos(std::numbers::pi * s / 2.0);
          },
          200);
      CHECK(q == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
    }
    CHECK(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0) ==
          doctest::Approx(jacobi_weight_integral(p)));
  }
}

TEST_CASE("orthonormal family") {
  const JacobiParams p(2, 2);
  const auto rule = gauss_jacobi(30, p);
  for (int n = 0; n <= 12; ++n) {
    for (int k = 0; k <= 12; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        s += rule.weights[i] * orthonormal_eval(n, p, rule.nodes[i]) * orthonormal_eval(k, p, rule.nodes[i]);
      }
      CHECK(s == doctest::Approx(n == k ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(JacobiParams(-1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(JacobiParams(0.0, -2.0), ParameterError);
  CHECK_THROWS_AS(gauss_jacobi(0, JacobiParams(0, 0)), ParameterError);
  CHECK_THROWS_AS(jacobi_eval(-1, JacobiParams(0, 0), 0.0), ParameterError);
}

TEST_CASE("quadrature padding from the environment") {
  ::unsetenv("BALLSPEC_QUAD_PAD");
  CHECK(quad_padding() == 8);
  ::setenv("BALLSPEC_QUAD_PAD", "3", 1);
  CHECK(quad_padding() == 3);
  ::setenv("BALLSPEC_QUAD_PAD", "junk", 1);
  CHECK(quad_padding() == 8);
  ::unsetenv("BALLSPEC_QUAD_PAD");
}
