#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ballspec/basis.hpp"
#include "ballspec/split.hpp"
#include "ballspec/types.hpp"

namespace ballspec {

/// Expansion coefficients. fhat is indexed by flatten_index (radial degree major, angular
/// index minor). When has_affine is set, the represented field is
///   sum_k [ fcirc_k T(r) + (1 - gamma_k) sum_n fhat_{n,k} R_n(r) ] e_k(theta).
struct CoeffTensor {
  BasisSpec spec;
  CVector fhat;
  bool has_affine = false;
  CVector fcirc;
  CVector gamma;
  TemplateProfile tmpl;

  std::size_t size() const noexcept { return fhat.size(); }
};

/// q = n (2K+1)^{d-1} + angular_flat(k); for d = 2, q = n (2K+1) + (m + K).
std::size_t flatten_index(int n, int m, const BasisSpec& spec);
std::size_t flatten_index(int n, std::span<const int> k, const BasisSpec& spec);
std::pair<int, int> unflatten_index(std::size_t q, const BasisSpec& spec);
std::pair<int, std::vector<int>> unflatten_index_nd(std::size_t q, const BasisSpec& spec);

struct AnalysisOptions {
  int angular_samples = 0;  // 0 selects max(2K+2, 16)
  int radial_nodes = 0;     // 0 selects N + quad_padding()
};

/// Coefficients <f, phi_{n,k}> under the inner product declared by spec (no splitting).
CoeffTensor analyze_field(const Field& f, const BasisSpec& spec, const AnalysisOptions& opts = {});

/// W-function coefficients of f1 plus the affine data of a make_pos split (d = 2).
CoeffTensor analyze_disc(const SplitPair& pair, const BasisSpec& spec, const AnalysisOptions& opts = {});

/// Same for the d = 3 ball.
CoeffTensor analyze_ball3(const SplitPair& pair, const BasisSpec& spec, const AnalysisOptions& opts = {});

/// Any d >= 2.
CoeffTensor analyze_split(const SplitPair& pair, const BasisSpec& spec, const AnalysisOptions& opts = {});

Complex synthesize(const CoeffTensor& c, double r, std::span<const double> theta);
CVector synthesize(const CoeffTensor& c, std::span<const BallPoint> points);

/// Copy of c with fhat_q zeroed for q >= keep.
CoeffTensor truncate(const CoeffTensor& c, std::size_t keep);

/// r_m = sin^2(m pi / 2M), theta_1 = -pi + 2 j pi / M, theta_{i>=2} = l pi / M; (M+1)^d points.
std::vector<BallPoint> error_grid(int d, int M);

struct ErrorReport {
  double e_inf = 0.0;
  double e_2 = 0.0;
  int grid_M = 6;
  std::vector<std::pair<std::size_t, double>> coeff_decay;  // (q, |fhat_q|) over the nonzero entries
};

ErrorReport error_report(const Field& f, const CoeffTensor& c, int M = 6);

struct SweepRow {
  std::size_t q;  // number of leading coefficients kept
  double e_inf;
  double e_2;
};

/// Errors of the truncations keep = 1..size() (the affine part is always kept).
std::vector<SweepRow> error_sweep(const Field& f, const CoeffTensor& c, int M = 6);

/// Entries with |fhat_q| > rel_tol * max |fhat|.
std::vector<std::pair<std::size_t, double>> nonzero_coefficients(const CoeffTensor& c, double rel_tol = 1e-12);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t count = 0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);
/// log|v| against log q (q >= 1 required).
LinearFit fit_loglog(std::span<const std::pair<std::size_t, double>> pts);
/// log10|v| against q.
LinearFit fit_loglinear(std::span<const std::pair<std::size_t, double>> pts);

}  // namespace ballspec
