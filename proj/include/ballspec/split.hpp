#pragma once

#include <memory>
#include <vector>

#include "ballspec/basis.hpp"
#include "ballspec/diffmat.hpp"
#include "ballspec/types.hpp"

namespace ballspec {

enum class TemplateKind { Linear, Cosine, Custom };

/// Radial template T with T(1) = 0, normalised so T(0) = 1. unit() is the L2(0,1)-normalised
/// version used as the affine direction of the compound matrices.
class TemplateProfile {
 public:
  explicit TemplateProfile(TemplateKind kind = TemplateKind::Linear);
  /// Custom template; rescaled so that value(0) = 1. Requires value(0) != 0 and value(1) = 0.
  TemplateProfile(std::function<double(double)> value, std::function<double(double)> derivative);

  TemplateKind kind() const noexcept { return kind_; }
  double value(double r) const { return value_(r) / origin_; }
  double derivative(double r) const { return derivative_(r) / origin_; }
  /// L2(0,1) norm of the origin-normalised template.
  double norm() const noexcept { return norm_; }
  RadialProfile unit() const;

 private:
  TemplateKind kind_;
  std::function<double(double)> value_;
  std::function<double(double)> derivative_;
  double origin_ = 1.0;
  double norm_ = 1.0;
};

struct SplitOptions {
  int d = 2;
  int K = 5;               // angular bandwidth split per mode; higher modes stay in f1
  int angular_samples = 0; // 0 selects max(2K+2, 16)
  int radial_nodes = 64;   // Gauss-Legendre nodes for the per-mode Gram-Schmidt integrals
};

/// Shared per-mode data of a split produced by make_pos.
struct SplitModes {
  int d = 2;
  int K = 0;
  int angular_samples = 0;
  CVector fcirc;  // f_k(0): angular coefficient of f(0, .), indexed by angular_flat
  CVector c;      // Gram-Schmidt scalar per mode
  CVector gamma;  // c / (1 + c)
};

/// f = f0 + f1 with f0, f1 as callable fields. For pairs built by make_pos, per mode k
///   f0_k = (1 + c_k) f_k(0) T(r) - c_k f_k(r),   f1_k = (1 + c_k) (f_k(r) - f_k(0) T(r)),
/// equivalently f0_k = f_k(0) T - gamma_k f1_k.
struct SplitPair {
  Field f;
  int d = 2;
  Field f0;
  Field f1;
  TemplateProfile tmpl;
  std::shared_ptr<const SplitModes> modes;  // null for pairs assembled from given fields
  bool degenerate = false;                  // f~1 == 0: returned (f, 0)
  bool certified = false;                   // make_pos output whose residuals passed verify_pos

  /// Pair from explicit closed forms (e.g. printed in the literature); never certified.
  static SplitPair from_fields(Field f, Field f0, Field f1, int d = 2);
};

/// Proper orthogonal splitting with one Gram-Schmidt step per angular mode.
SplitPair make_pos(const Field& f, const TemplateProfile& tmpl = TemplateProfile(), const SplitOptions& opts = {});

struct PosReport {
  double sum = 0.0;          // max |f0 + f1 - f| at the check samples
  double boundary = 0.0;     // max |f0(1,.)| + |f1(1,.)|
  double origin = 0.0;       // max of |f0(0,.) - f(0,.)| and |f1(0,.)|
  double orthogonality = 0.0;  // |<f0, f1>| under the Cartesian inner product
  double norm_f2 = 0.0;
  double norm_f0_2 = 0.0;
  double norm_f1_2 = 0.0;

  double max_residual() const;
};

struct VerifyOptions {
  int radial_nodes = 48;
  int angular_samples = 16;
};

PosReport verify_pos(const SplitPair& pair, const VerifyOptions& opts = {});

}  // namespace ballspec
