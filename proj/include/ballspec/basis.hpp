#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ballspec/jacobi.hpp"
#include "ballspec/types.hpp"

namespace ballspec {

enum class BasisKind {
  WFunc,        // W-functions (1-r)^{a/2} r^{b/2} P~_n(2r-1) times angular modes
  Ex1Weighted,  // (1-r)^{a/2} P_n^{(a,1)}(2r-1), orthonormal under r dr d theta
  Zernike,      // P_n^{(0,1)}(2r-1), orthonormal under r dr d theta; no differentiation matrix
};

enum class InnerProductKind {
  Cartesian,  // integral over the (r, theta) box with measure dr dtheta
  Polar,      // measure r dr dtheta
};

struct BasisSpec {
  double alpha = 2.0;
  double beta = 2.0;
  int d = 2;
  int N = 6;  // inclusive max radial degree
  int K = 5;  // max |k_j| per angular index
  BasisKind kind = BasisKind::WFunc;

  /// Throws ParameterError if the spec is not a valid family.
  void validate() const;

  /// alpha, beta > 0 on a W-function basis: the radial differentiation matrix is skew.
  bool skew_certified() const;
  /// skew_certified and alpha == beta: the closed-form semi-separable D is available.
  bool closed_form_certified() const;
  /// alpha and beta are even integers, so the basis functions are analytic in r.
  bool analytic_certified() const;

  InnerProductKind inner_product() const;

  /// (N+1) * (2K+1)^{d-1}
  std::size_t coefficient_count() const;
};

struct PolarPoint {
  double r;
  double theta;
};

struct BallPoint {
  double r;
  std::vector<double> theta;  // d-1 angles
};

/// Radial functions have the form R_n(r) = c_n (1-r)^a r^b P_n^{(2a, 2b+w)}(2r-1) and are
/// orthonormal under r^w dr on [0, 1].
struct RadialFactor {
  double a;
  double b;
  int w;

  JacobiParams poly() const { return {2.0 * a, 2.0 * b + w}; }
};

RadialFactor radial_factor(const BasisSpec& spec);

/// c_n of the radial representation above.
double radial_scale(const BasisSpec& spec, int n);

double radial_eval(const BasisSpec& spec, int n, double r);
double radial_derivative(const BasisSpec& spec, int n, double r);

/// Unit-norm disc W-function (1/sqrt(pi)) 2^{(a+b)/2} (1-r)^{a/2} r^{b/2} P~_n(2r-1) e^{i m theta}.
Complex wfunc_eval(const BasisSpec& spec, int n, int m, const PolarPoint& p);

/// Generalised Zernike function on the d-ball: radial W-function with beta = alpha times the
/// orthonormal angular mode e_m (see angular.hpp).
Complex ball_basis_eval(const BasisSpec& spec, int n, std::span<const int> mvec, const BallPoint& p);

/// Ratio ball_basis_eval / wfunc_eval at d = 2 (the two kinds share one normalisation).
inline constexpr double kBallDiscScale = 1.0;

/// Example-1 basis, orthonormal under r dr dtheta; requires alpha > 1.
Complex ex1_basis_eval(int n, int m, const PolarPoint& p, double alpha);

/// Classical (unnormalised) Zernike polynomial P_n^{(0,1)}(2r-1) e^{i m theta}.
Complex zernike_eval(int n, int m, const PolarPoint& p);

/// Basis function of any kind by flat angular multi-index.
Complex basis_eval(const BasisSpec& spec, int n, std::span<const int> k, double r,
                   std::span<const double> theta);

/// A complex field on the coordinate box; theta has d-1 entries.
using Field = std::function<Complex(double r, std::span<const double> theta)>;

/// Adapts f(r, theta) to a Field for d = 2.
Field disc_field(std::function<Complex(double, double)> f);

/// Tensor quadrature on [0,1] x angular box. The radial rule is Gauss-Jacobi in x = 2r-1 with
/// weight (1-x)^{radial_alpha} (1+x)^{radial_beta}; the weight is divided out of the integrand,
/// so it should match the algebraic endpoint factors of the integrands being integrated.
class BoxQuadrature {
 public:
  BoxQuadrature(int d, InnerProductKind kind, int radial_nodes, int angular_nodes,
                double radial_alpha = 0.0, double radial_beta = 0.0);

  std::size_t size() const noexcept { return radial_.size() * angular_size_; }

  CVector sample(const Field& f) const;

  /// sum_i w_i a_i conj(b_i)
  Complex inner(std::span<const Complex> a, std::span<const Complex> b) const;

  double radius(std::size_t i) const;
  void angles(std::size_t i, std::span<double> theta) const;

 private:
  int d_;
  int angular_nodes_;
  std::size_t angular_size_;
  std::vector<double> radial_;          // r nodes
  std::vector<double> radial_weight_;   // includes 1/weight and the Polar factor r
  double angular_weight_;
};

struct InnerProductOptions {
  InnerProductKind kind = InnerProductKind::Cartesian;
  int d = 2;
  int resolution = 32;  // samples per angular direction and radial nodes
  double radial_alpha = 0.0;
  double radial_beta = 0.0;
};

Complex inner_product(const Field& f, const Field& g, const InnerProductOptions& opts);

}  // namespace ballspec
