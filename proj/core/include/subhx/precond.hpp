#pragma once

#include <array>
#include <atomic>
#include <memory>

#include <Eigen/Dense>

#include "subhx/dofspaces.hpp"
#include "subhx/schur.hpp"
#include "subhx/types.hpp"

namespace subhx {

/// One-level Neumann-Neumann preconditioner for R^T T_L R:
///   Q_NN = D_Σ^{-1} R^T D T_L^{-1} D R D_Σ^{-1}
/// Holds shared ownership of the scalar Schur system. Not copyable; the call
/// counter is atomic so concurrent applications are safe.
class NeumannNeumann {
 public:
  NeumannNeumann(std::shared_ptr<const SchurSystem> scalar_schur, Multiplicity multiplicity);
  NeumannNeumann(const NeumannNeumann&) = delete;
  NeumannNeumann& operator=(const NeumannNeumann&) = delete;

  [[nodiscard]] Vector apply(const Vector& f) const;
  [[nodiscard]] Index dim() const { return schur_->skeleton_dim(); }
  [[nodiscard]] long calls() const { return calls_.load(); }
  void reset_calls() { calls_.store(0); }
  [[nodiscard]] const SchurSystem& schur() const { return *schur_; }
  [[nodiscard]] const Multiplicity& multiplicity() const { return multiplicity_; }

 private:
  std::shared_ptr<const SchurSystem> schur_;
  Multiplicity multiplicity_;
  mutable std::atomic<long> calls_{0};
};

/// Substructured Hiptmair-Xu preconditioner for R̲^T T_M R̲:
///   Q_HX = 𝓑̲ diag(𝓜)^{-1} 𝓑̲^T + G_Σ Q G_Σ^T + Σ_j Π_Σ^{e_j} Q (Π_Σ^{e_j})^T
/// where Q is any SPD approximation of (R^T T_L R)^{-1}, normally Q_NN.
class HiptmairXu {
 public:
  static constexpr int kNumTerms = 5;

  HiptmairXu(Vector skeleton_jacobi, SparseMatrix gradient_skeleton, std::array<SparseMatrix, 3> interp_skeleton,
             LinearOperator scalar_inverse);

  [[nodiscard]] Vector apply(const Vector& f) const;
  /// Term 0 is the Jacobi part, 1 the gradient part, 2..4 the interpolation parts.
  [[nodiscard]] Vector apply_term(int term, const Vector& f) const;
  [[nodiscard]] Index dim() const { return skeleton_jacobi_.size(); }

 private:
  Vector skeleton_jacobi_;
  SparseMatrix gradient_;
  SparseMatrix gradient_t_;
  std::array<SparseMatrix, 3> interp_;
  std::array<SparseMatrix, 3> interp_t_;
  LinearOperator scalar_inverse_;
};

/// Restriction of the global Jacobi diagonal to skeleton edges. In dof
/// coordinates 𝓑̲ is a selection, so 𝓑̲ diag(𝓜)^{-1} 𝓑̲^T is this diagonal inverted.
Vector skeleton_jacobi(const Vector& global_jacobi, const FieldSpaces& edge_spaces);

struct ConditionEstimate {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double cond = 0.0;
};

enum class ConditionMethod { Dense, Lanczos };

inline constexpr Index kDenseConditionCap = 4000;

/// Extremal eigenvalues of prec·op. The dense path materializes both operators
/// and solves the symmetric-definite problem exactly; the Lanczos path runs PCG
/// and bounds cond from below.
ConditionEstimate estimate_condition(const LinearOperator& op, const LinearOperator& prec, Index dim,
                                     ConditionMethod method, std::uint64_t seed = 1);

/// Spectrum of P·A for dense symmetric A and SPD P (via P = C C^T, C^T A C).
ConditionEstimate dense_condition(const Eigen::MatrixXd& op, const Eigen::MatrixXd& prec);

/// Columns op(e_0), ..., op(e_{n-1}).
Eigen::MatrixXd materialize(const LinearOperator& op, Index dim);

}  // namespace subhx
