#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <vector>

#include "ballspec/basis.hpp"
#include "ballspec/semisep.hpp"
#include "ballspec/types.hpp"

namespace ballspec {

struct ABCoeffs {
  std::vector<double> a;
  std::vector<double> b;
  double alpha;
};

/// a_m, b_m for m = 0..M by the multiplicative recursions; alpha > 0.
ABCoeffs ab_coeffs(int M, double alpha);

/// Closed forms a_m = sqrt(m! (2m+2a+1) / (2 Gamma(m+1+2a))), b_n = sqrt((2n+1+2a) Gamma(n+1+2a) / (2 n!)).
double ab_closed_a(int m, double alpha);
double ab_closed_b(int n, double alpha);

/// Skew-symmetric, parity-masked D with D_mn = a_m b_n (m > n, m+n odd). This is d/dx for the
/// ultraspherical W-functions (1-x^2)^{alpha/2} P~_n^{(alpha,alpha)}(x) on [-1, 1].
SemiSep2 build_Dr(int N, double alpha);

/// d/dr = kRadialScale * d/dx under r = (1+x)/2.
inline constexpr double kRadialScale = 2.0;

/// D^[theta]: the block of Fourier mode m is (i m) * Identity.
struct AngularDiag {
  int K = 0;
  Complex operator()(int m) const;
};
AngularDiag build_Dtheta(int K);

/// D_nk = \int_0^1 r^w R_n'(r) R_k(r) dr for the radial functions of spec (r variable, w = 1 for
/// the polar kinds), by Gauss-Jacobi with the endpoint factors of R_n' R_k folded into the weight.
/// nquad = 0 selects N + 1 + quad_padding().
Eigen::MatrixXd radial_diff_quadrature(const BasisSpec& spec, int nquad = 0);

/// I_nk = \int (1-x^2)^alpha P~_n'(x) P~_k(x) dx, with P~ orthonormal for (alpha, alpha).
/// build_Dr equals (I - I^T) / 2.
Eigen::MatrixXd ultraspherical_derivative_gram(int N, double alpha, int nquad = 0);

/// Example-1 S matrix (closed form, symmetric); D + D^T = -S under the polar inner product.
Eigen::MatrixXd asymmetry_S_ex1(int Nmax, double alpha);

/// Example-2 entry (-1)^{n+m} sqrt((alpha+2n+1)(alpha+2m+1)) = -(D + D^T)_{nm} for beta = 0.
double asymmetry_beta0(int n, int m, double alpha);

/// Differentiation operators of a basis. Dr holds the closed-form x-variable matrix when the basis
/// is ultraspherical and skew-certified; otherwise only the quadrature-built dense matrix exists.
struct DiffOpSet {
  BasisSpec spec;
  std::optional<SemiSep2> Dr;
  AngularDiag Dtheta;
  bool certified = false;

  /// Radial differentiation matrix in the r variable (kRadialScale * Dr or the quadrature matrix).
  Eigen::MatrixXd radial_matrix() const;
};

DiffOpSet build_diffops(const BasisSpec& spec);

/// Real radial profile h(r) on [0, 1] with its derivative.
struct RadialProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// \int_0^1 h' h dr and \int_0^1 h^2 dr by Gauss-Legendre after r = sin^2(pi s / 2).
Complex profile_scalar(const RadialProfile& h, int nodes = 96);
double profile_norm2(const RadialProfile& h, int nodes = 96);

enum class CompoundKind { Radial, Angular };

/// Bordered operator: 1x1 block d_scalar for the affine direction, core block from DiffOpSet.
struct CompoundOp {
  Complex d_scalar;
  const DiffOpSet* core = nullptr;
  CompoundKind kind = CompoundKind::Radial;
  int mode = 0;

  /// Dense bordered matrix [[d, 0], [0, core block]] in the r variable (radial) or for mode m.
  Eigen::MatrixXcd dense() const;
};

/// h must have unit L2(0,1) norm (within 1e-10) and h(1) = 0; the affine direction is
/// h(r) e_m(theta) with an orthonormal angular mode, so Re d = -h(0)^2 / 2.
CompoundOp compound_radial(const DiffOpSet& core, const RadialProfile& h);

/// Angular compound matrix for Fourier mode m: scalar block i m, core block i m I.
CompoundOp compound_angular(const DiffOpSet& core, int m);

}  // namespace ballspec
