#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>

#include "ballspec/semisep.hpp"
#include "ballspec/types.hpp"

namespace ballspec {

/// Circle of quadrature nodes lambda_j = center + radius * exp(2 pi i j / nodes).
struct ContourSpec {
  Complex center{0.0, 0.0};
  double radius = 1.0;
  int nodes = 32;

  void validate() const;
};

using ScalarFunction = std::function<Complex(Complex)>;

struct ContourResult {
  CVector value;
  int nodes_used = 0;
  double last_change = 0.0;  // relative change at the final doubling
};

/// Spectral radius of a dense matrix (eigenvalues; desk-scale sizes).
double spectral_radius(const Eigen::MatrixXcd& A);

/// Centre 0, radius 1.25 * spectral radius (at least 1e-3), 32 nodes.
ContourSpec default_contour(const Eigen::MatrixXcd& A);

/// Trapezoidal rule for (2 pi i)^{-1} \oint g(z) (z I - A)^{-1} v dz at exactly spec.nodes nodes.
/// Throws ContourError if the spectrum is not strictly inside the circle.
CVector contour_apply_fixed(const ScalarFunction& g, const Eigen::MatrixXcd& A, std::span<const Complex> v,
                            const ContourSpec& spec);

/// Doubles the node count from spec.nodes until successive results differ by at most
/// tol * max(1, |result|); throws ContourError if max_nodes is reached first.
ContourResult contour_apply(const ScalarFunction& g, const Eigen::MatrixXcd& A, std::span<const Complex> v,
                            const ContourSpec& spec, int max_nodes = 1024, double tol = 1e-10);

ContourResult contour_apply(const ScalarFunction& g, const SemiSep2& A, std::span<const Complex> v,
                            const ContourSpec& spec, int max_nodes = 1024, double tol = 1e-10);

/// exp(t A) v by the contour rule, split into s substeps exp(tA/s)^s so that the scaled circle
/// radius 1.25 rho |t| / s stays below max_scaled_radius. Resolvent factorisations are reused
/// across substeps.
struct ExpmOptions {
  double max_scaled_radius = 2.0;
  int max_nodes = 1024;
  double tol = 1e-10;
};

struct ExpmResult {
  CVector value;
  int substeps = 0;
  int nodes_used = 0;
};

/// Number of substeps expm_apply would use for A and t.
int expm_substeps(double spectral_radius, double t, const ExpmOptions& opts = {});

ExpmResult expm_apply(const Eigen::MatrixXcd& A, std::span<const Complex> v, double t, const ExpmOptions& opts = {});

}  // namespace ballspec
