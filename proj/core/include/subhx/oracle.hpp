#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "subhx/types.hpp"

namespace subhx {

/// Dense operator used as ground truth. `spd` marks operators that must pass
/// a symmetry and Cholesky check.
struct DenseOp {
  Eigen::MatrixXd entries;
  bool spd = false;

  DenseOp() = default;
  explicit DenseOp(Eigen::MatrixXd m, bool is_spd = false) : entries(std::move(m)), spd(is_spd) {}
  static DenseOp spd_op(Eigen::MatrixXd m) { return DenseOp(std::move(m), true); }

  [[nodiscard]] Index rows() const { return entries.rows(); }
  [[nodiscard]] Index cols() const { return entries.cols(); }
  /// Throws SingularityError if tagged SPD but not symmetric to 1e-12 or not
  /// Cholesky-factorable.
  void check() const;
};

/// Θ†_A = A^{-1}Θ^T(ΘA^{-1}Θ^T)^{-1}: the right inverse of surjective Θ with
/// minimal A-norm images. Throws SingularityError if Θ is rank deficient.
DenseOp pseudoinverse_surjective(const DenseOp& theta, const DenseOp& a);

/// Φ†_A = (Φ^TAΦ)^{-1}Φ^TA: the left inverse of injective Φ for which ΦΦ†_A is
/// the A-orthogonal projector onto Im(Φ).
DenseOp pseudoinverse_injective(const DenseOp& phi, const DenseOp& a);

/// Dense inverse of an SPD matrix through its Cholesky factor.
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& a);

/// max|X − Y| / max(1, max|Y|).
double relative_max_diff(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

struct IdentityCheck {
  std::string name;
  std::string mesh;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<IdentityCheck> checks;

  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] const IdentityCheck* find(const std::string& name) const;
  /// CSV: identity,mesh,residual,tolerance,status
  void write_csv(std::ostream& os) const;
};

struct VerifyOptions {
  Grid3 cells_per_axis{2, 2, 2};
  Grid3 subdomain_grid{2, 2, 2};
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  /// Fault injection: flips the sign of one G_Σ entry.
  bool corrupt_gradient_sign = false;
};

/// Largest edge-space dimension accepted by verify_identities.
inline constexpr Index kVerifyDofCap = 2000;

/// Runs every dense identity check on the given mesh. Throws ConfigError if
/// the mesh exceeds kVerifyDofCap; identity failures are report entries.
VerifyReport verify_identities(const VerifyOptions& options);

}  // namespace subhx
