#include "ballspec/pde.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ballspec/contour.hpp"

namespace ballspec {

namespace {

constexpr int kMaxContourSubsteps = 16;

SemidiscreteOp build(PdeKind kind, const BasisSpec& spec, const Eigen::MatrixXd& Dr, Complex d, bool include_affine) {
  SemidiscreteOp op;
  op.kind = kind;
  op.spec = spec;
  op.d_scalar = d;
  op.include_affine = include_affine;
  const Eigen::Index n = Dr.rows();
  const Eigen::Index off = include_affine ? 1 : 0;
  const Eigen::MatrixXd D2 = Dr * Dr;
  for (int m = -spec.K; m <= spec.K; ++m) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n + off, n + off);
    if (include_affine) L(0, 0) = (d * d).real() - m * m;
    L.bottomRightCorner(n, n) = D2;
    L.bottomRightCorner(n, n).diagonal().array() -= static_cast<double>(m) * m;
    op.modes.push_back(m);
    op.blocks.push_back(std::move(L));
  }
  return op;
}

}  // namespace

Eigen::MatrixXcd SemidiscreteOp::generator(std::size_t j) const {
  const Eigen::MatrixXcd L = blocks.at(j).cast<Complex>();
  return kind == PdeKind::Diffusion ? L : Complex(0.0, 1.0) * L;
}

SemidiscreteOp assemble(PdeKind kind, const DiffOpSet& ops, const CompoundOp& compound, bool include_affine) {
  if (ops.spec.d != 2) throw UsageError("assemble: the semidiscretisation is implemented for the disc (d = 2)");
  if (!ops.certified || !ops.Dr) {
    std::ostringstream os;
    os << "assemble: basis (alpha=" << ops.spec.alpha << ", beta=" << ops.spec.beta
       << ") is not certified skew-symmetric; stability cannot be guaranteed";
    throw UsageError(os.str());
  }
  if (compound.kind != CompoundKind::Radial) throw UsageError("assemble: expects the radial compound operator");
  return build(kind, ops.spec, ops.radial_matrix(), compound.d_scalar, include_affine);
}

SemidiscreteOp assemble_negative_control(PdeKind kind, const BasisSpec& spec) {
  if (spec.d != 2) throw UsageError("assemble_negative_control: d must be 2");
  return build(kind, spec, radial_diff_quadrature(spec), Complex{}, false);
}

CVector propagate(const SemidiscreteOp& op, std::span<const Complex> v, double t, PropagateMethod method) {
  if (v.size() != op.dim()) throw UsageError("propagate: state size does not match the operator");
  if (op.kind == PdeKind::Diffusion && t < 0.0) throw ParameterError("propagate: diffusion needs t >= 0");
  CVector out(v.size());
  const std::size_t bs = op.block_size();
  if (t == 0.0) {
    std::copy(v.begin(), v.end(), out.begin());
    return out;
  }
  for (std::size_t j = 0; j < op.blocks.size(); ++j) {
    const auto vj = v.subspan(j * bs, bs);
    const auto& L = op.blocks[j];
    PropagateMethod use = method;
    if (use == PropagateMethod::Auto) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L, Eigen::EigenvaluesOnly);
      const double rho = es.eigenvalues().cwiseAbs().maxCoeff();
      use = expm_substeps(rho, t) <= kMaxContourSubsteps ? PropagateMethod::Contour : PropagateMethod::Dense;
    }
    if (use == PropagateMethod::Contour) {
      const auto res = expm_apply(op.generator(j), vj, t);
      std::copy(res.value.begin(), res.value.end(), out.begin() + static_cast<std::ptrdiff_t>(j * bs));
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
    if (es.info() != Eigen::Success) throw NumericalError("propagate: eigensolve failed");
    const Eigen::MatrixXcd V = es.eigenvectors().cast<Complex>();
    Eigen::VectorXcd phase(static_cast<Eigen::Index>(bs));
    for (Eigen::Index k = 0; k < phase.size(); ++k) {
      const double mu = es.eigenvalues()[k];
      phase[k] = op.kind == PdeKind::Diffusion ? Complex(std::exp(t * mu), 0.0) : std::polar(1.0, t * mu);
    }
    const Eigen::Map<const Eigen::VectorXcd> x(vj.data(), static_cast<Eigen::Index>(bs));
    const Eigen::VectorXcd y = V * phase.asDiagonal() * (V.adjoint() * x);
    std::copy(y.data(), y.data() + y.size(), out.begin() + static_cast<std::ptrdiff_t>(j * bs));
  }
  return out;
}

double spectral_abscissa(const Eigen::MatrixXcd& A) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
  if (es.info() != Eigen::Success) throw NumericalError("spectral_abscissa: eigensolve failed");
  return es.eigenvalues().real().maxCoeff();
}

double spectral_abscissa(const SemidiscreteOp& op) {
  double a = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < op.blocks.size(); ++j) a = std::max(a, spectral_abscissa(op.generator(j)));
  return a;
}

std::vector<StabilityRow> stability_report(const SemidiscreteOp& op, std::span<const double> t_grid) {
  // Blocks are symmetric: ||exp(t L)||_2 = exp(t lambda_max), ||exp(i t L)||_2 = 1.
  const double abscissa = spectral_abscissa(op);
  double lmax = -std::numeric_limits<double>::infinity();
  for (const auto& L : op.blocks) {
    const bool symmetric = (L - L.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, L.cwiseAbs().maxCoeff());
    if (symmetric) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L, Eigen::EigenvaluesOnly);
      lmax = std::max(lmax, es.eigenvalues().maxCoeff());
    } else {
      Eigen::EigenSolver<Eigen::MatrixXd> es(L, false);
      lmax = std::max(lmax, es.eigenvalues().real().maxCoeff());
    }
  }
  const double d2 = std::norm(op.d_scalar);
  std::vector<StabilityRow> rows;
  for (double t : t_grid) {
    StabilityRow row;
    row.N = op.spec.N;
    row.t = t;
    row.abscissa = abscissa;
    row.growth = op.kind == PdeKind::Diffusion ? std::exp(t * lmax) : 1.0;
    row.bound = std::exp(d2 * t);
    row.ok = abscissa <= d2 + 1e-12 && row.growth <= row.bound * (1.0 + 1e-8);
    rows.push_back(row);
  }
  return rows;
}

std::vector<StabilityRow> stability_sweep(PdeKind kind, const BasisSpec& base, const RadialProfile& h,
                                          std::span<const int> Ns, std::span<const double> t_grid,
                                          bool include_affine) {
  std::vector<StabilityRow> rows;
  for (int N : Ns) {
    BasisSpec spec = base;
    spec.N = N;
    const auto ops = build_diffops(spec);
    const auto comp = compound_radial(ops, h);
    const auto op = assemble(kind, ops, comp, include_affine);
    const auto part = stability_report(op, t_grid);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

}  // namespace ballspec
