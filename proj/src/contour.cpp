#include "ballspec/contour.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace ballspec {

void ContourSpec::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("ContourSpec: radius must be positive");
  if (nodes < 8) throw ParameterError("ContourSpec: at least 8 nodes are required");
}

double spectral_radius(const Eigen::MatrixXcd& A) {
  if (A.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
  if (es.info() != Eigen::Success) throw NumericalError("spectral_radius: eigensolve failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

ContourSpec default_contour(const Eigen::MatrixXcd& A) {
  ContourSpec spec;
  spec.radius = std::max(1.25 * spectral_radius(A), 1e-3);
  return spec;
}

namespace {

void check_enclosure(const Eigen::MatrixXcd& A, const ContourSpec& spec) {
  if (A.size() == 0) return;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
  if (es.info() != Eigen::Success) throw ContourError("contour: eigensolve for the enclosure check failed");
  const double reach = (es.eigenvalues().array() - spec.center).abs().maxCoeff();
  if (!(reach < spec.radius)) {
    std::ostringstream os;
    os << "contour: spectrum not enclosed (max |lambda - c| = " << reach << ", radius " << spec.radius << ")";
    throw ContourError(os.str());
  }
}

// Resolvent factorisations at the nodes of the current level; doubling keeps the old nodes
// at even positions.
class NodeCache {
 public:
  NodeCache(const Eigen::MatrixXcd& A, const ContourSpec& spec) : A_(A), spec_(spec) {}

  void ensure(int nodes) {
    if (nodes == static_cast<int>(lu_.size())) return;
    std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>> next(static_cast<std::size_t>(nodes));
    const bool reuse = !lu_.empty() && nodes == 2 * static_cast<int>(lu_.size());
    for (int j = 0; j < nodes; ++j) {
      if (reuse && j % 2 == 0) {
        next[static_cast<std::size_t>(j)] = std::move(lu_[static_cast<std::size_t>(j / 2)]);
        continue;
      }
      Eigen::MatrixXcd M = -A_;
      M.diagonal().array() += node(j, nodes);
      next[static_cast<std::size_t>(j)].compute(M);
    }
    lu_ = std::move(next);
  }

  Complex node(int j, int nodes) const {
    return spec_.center + spec_.radius * std::polar(1.0, 2.0 * kPi * j / nodes);
  }

  Eigen::VectorXcd apply(const ScalarFunction& g, const Eigen::VectorXcd& v) const {
    const int nodes = static_cast<int>(lu_.size());
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(v.size());
    for (int j = 0; j < nodes; ++j) {
      const Complex z = node(j, nodes);
      const Eigen::VectorXcd x = lu_[static_cast<std::size_t>(j)].solve(v);
      acc += (g(z) * (z - spec_.center)) * x;
    }
    acc /= static_cast<double>(nodes);
    if (!acc.allFinite()) throw ContourError("contour: non-finite quadrature sum (resolvent blow-up)");
    return acc;
  }

 private:
  const Eigen::MatrixXcd& A_;
  ContourSpec spec_;
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>> lu_;
};

double rel_change(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return (a - b).norm() / std::max(1.0, a.norm());
}

Eigen::VectorXcd adaptive(NodeCache& cache, const ScalarFunction& g, const Eigen::VectorXcd& v, int start,
                          int max_nodes, double tol, int& used, double& change) {
  int nodes = start;
  cache.ensure(nodes);
  Eigen::VectorXcd prev = cache.apply(g, v);
  while (true) {
    if (2 * nodes > max_nodes) {
      std::ostringstream os;
      os << "contour: no convergence within " << max_nodes << " nodes (last change " << change << ")";
      throw ContourError(os.str());
    }
    nodes *= 2;
    cache.ensure(nodes);
    Eigen::VectorXcd cur = cache.apply(g, v);
    change = rel_change(cur, prev);
    if (change <= tol) {
      used = nodes;
      return cur;
    }
    prev = std::move(cur);
  }
}

}  // namespace

CVector contour_apply_fixed(const ScalarFunction& g, const Eigen::MatrixXcd& A, std::span<const Complex> v,
                            const ContourSpec& spec) {
  spec.validate();
  if (A.rows() != A.cols() || static_cast<std::size_t>(A.rows()) != v.size()) {
    throw UsageError("contour_apply: size mismatch");
  }
  check_enclosure(A, spec);
  NodeCache cache(A, spec);
  cache.ensure(spec.nodes);
  const Eigen::VectorXcd vv = Eigen::Map<const Eigen::VectorXcd>(v.data(), A.rows());
  const Eigen::VectorXcd x = cache.apply(g, vv);
  return CVector(x.data(), x.data() + x.size());
}

ContourResult contour_apply(const ScalarFunction& g, const Eigen::MatrixXcd& A, std::span<const Complex> v,
                            const ContourSpec& spec, int max_nodes, double tol) {
  spec.validate();
  if (A.rows() != A.cols() || static_cast<std::size_t>(A.rows()) != v.size()) {
    throw UsageError("contour_apply: size mismatch");
  }
  check_enclosure(A, spec);
  NodeCache cache(A, spec);
  const Eigen::VectorXcd vv = Eigen::Map<const Eigen::VectorXcd>(v.data(), A.rows());
  ContourResult res;
  const Eigen::VectorXcd x = adaptive(cache, g, vv, spec.nodes, max_nodes, tol, res.nodes_used, res.last_change);
  res.value.assign(x.data(), x.data() + x.size());
  return res;
}

ContourResult contour_apply(const ScalarFunction& g, const SemiSep2& A, std::span<const Complex> v,
                            const ContourSpec& spec, int max_nodes, double tol) {
  const Eigen::MatrixXcd dense = A.to_dense().cast<Complex>();
  return contour_apply(g, dense, v, spec, max_nodes, tol);
}

int expm_substeps(double rho, double t, const ExpmOptions& opts) {
  const double scaled = 1.25 * rho * std::abs(t);
  return std::max(1, static_cast<int>(std::ceil(scaled / opts.max_scaled_radius)));
}

ExpmResult expm_apply(const Eigen::MatrixXcd& A, std::span<const Complex> v, double t, const ExpmOptions& opts) {
  if (A.rows() != A.cols() || static_cast<std::size_t>(A.rows()) != v.size()) {
    throw UsageError("expm_apply: size mismatch");
  }
  ExpmResult res;
  if (t == 0.0 || A.size() == 0) {
    res.value.assign(v.begin(), v.end());
    res.substeps = 0;
    return res;
  }
  const double rho = spectral_radius(A);
  res.substeps = expm_substeps(rho, t, opts);
  const double tau = t / res.substeps;
  ContourSpec spec;
  spec.radius = std::max(1.25 * rho, 1e-3);
  check_enclosure(A, spec);

  NodeCache cache(A, spec);
  const ScalarFunction g = [tau](Complex z) { return std::exp(tau * z); };
  Eigen::VectorXcd x = Eigen::Map<const Eigen::VectorXcd>(v.data(), A.rows());
  double change = 0.0;
  int used = 0;
  x = adaptive(cache, g, x, spec.nodes, opts.max_nodes, opts.tol, used, change);
  res.nodes_used = used;
  for (int s = 1; s < res.substeps; ++s) x = cache.apply(g, x);
  res.value.assign(x.data(), x.data() + x.size());
  return res;
}

}  // namespace ballspec
