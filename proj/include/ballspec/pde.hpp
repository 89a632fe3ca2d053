#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "ballspec/diffmat.hpp"
#include "ballspec/types.hpp"

namespace ballspec {

enum class PdeKind { Diffusion, Schrodinger };

/// Per Fourier mode m = -K..K a real symmetric block
///   L_m = diag(Re(d^2) - m^2, Dr^2 - m^2 I)   (affine entry first, when present),
/// with Dr the skew r-variable radial matrix, so the f1 block -(Dr^T Dr + m^2 I) is negative
/// semidefinite. The generator is L (diffusion) or i L (Schrodinger).
struct SemidiscreteOp {
  PdeKind kind = PdeKind::Diffusion;
  BasisSpec spec;
  Complex d_scalar;
  bool include_affine = true;
  std::vector<int> modes;
  std::vector<Eigen::MatrixXd> blocks;

  std::size_t block_size() const noexcept { return blocks.empty() ? 0 : static_cast<std::size_t>(blocks[0].rows()); }
  std::size_t dim() const noexcept { return block_size() * blocks.size(); }

  /// Generator of mode block j: L_j or i L_j.
  Eigen::MatrixXcd generator(std::size_t j) const;
};

/// Refuses (UsageError) bases whose radial matrix is not certified skew-symmetric.
SemidiscreteOp assemble(PdeKind kind, const DiffOpSet& ops, const CompoundOp& compound, bool include_affine = true);

/// The same construction with a quadrature-built, non-skew radial matrix; used only to exhibit
/// the instability of uncertified bases (e.g. beta = 0).
SemidiscreteOp assemble_negative_control(PdeKind kind, const BasisSpec& spec);

enum class PropagateMethod { Auto, Contour, Dense };

/// exp(t G) v blockwise. Auto uses the contour rule when it needs at most 16 substeps and the
/// dense Hermitian eigendecomposition otherwise. Diffusion requires t >= 0.
CVector propagate(const SemidiscreteOp& op, std::span<const Complex> v, double t,
                  PropagateMethod method = PropagateMethod::Auto);

/// max Re(lambda) over all generator blocks.
double spectral_abscissa(const SemidiscreteOp& op);
double spectral_abscissa(const Eigen::MatrixXcd& A);

struct StabilityRow {
  int N = 0;
  double t = 0.0;
  double abscissa = 0.0;
  double growth = 0.0;  // max over blocks of ||exp(t G)||_2
  double bound = 0.0;   // exp(|d|^2 t)
  bool ok = false;
};

std::vector<StabilityRow> stability_report(const SemidiscreteOp& op, std::span<const double> t_grid);

/// stability_report for the same basis and template at each N.
std::vector<StabilityRow> stability_sweep(PdeKind kind, const BasisSpec& base, const RadialProfile& h,
                                          std::span<const int> Ns, std::span<const double> t_grid,
                                          bool include_affine = true);

}  // namespace ballspec
