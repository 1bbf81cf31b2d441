#pragma once

#include <memory>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "subhx/assemble.hpp"
#include "subhx/dofspaces.hpp"
#include "subhx/types.hpp"

namespace subhx {

/// Cholesky factor of an SPD matrix. Blocks with at most kDenseCutoff rows are
/// factored densely, larger ones with a sparse LDL^T under AMD ordering.
class SymmetricFactor {
 public:
  static constexpr Index kDenseCutoff = 600;

  SymmetricFactor() = default;
  /// Throws SingularityError if the matrix is not numerically SPD.
  explicit SymmetricFactor(const SparseMatrix& a);

  [[nodiscard]] Vector solve(const Vector& b) const;
  [[nodiscard]] Index dim() const { return dim_; }
  [[nodiscard]] bool is_dense() const { return std::holds_alternative<Dense>(factor_); }

 private:
  using Dense = Eigen::LLT<Eigen::MatrixXd>;
  using Sparse = Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>>;

  Index dim_ = 0;
  std::variant<std::monostate, Dense, std::unique_ptr<Sparse>> factor_;
};

/// Extracts A(rows, cols) for sorted or unsorted index lists.
SparseMatrix extract_block(const SparseMatrix& a, const std::vector<Index>& rows, const std::vector<Index>& cols);

/// Local solves for one subdomain: Neumann factor of the full local operator
/// and Dirichlet factor of its interior block.
class SubdomainSolver {
 public:
  SubdomainSolver(const SparseMatrix& local, const SubdomainDofs& dofs);

  [[nodiscard]] Index num_boundary() const { return static_cast<Index>(boundary_.size()); }
  [[nodiscard]] Index num_interior() const { return static_cast<Index>(interior_.size()); }
  [[nodiscard]] Index num_local() const { return local_.rows(); }

  /// T_j p = A_bb p − A_bi A_ii^{-1} A_ib p
  [[nodiscard]] Vector apply_T(const Vector& p) const;
  /// T_j^{-1} g = B_j A^{-1} B_j^T g
  [[nodiscard]] Vector apply_Tinv(const Vector& g) const;
  /// Discrete harmonic extension of boundary data p, in local numbering.
  [[nodiscard]] Vector harmonic_lift(const Vector& p) const;

  [[nodiscard]] const SparseMatrix& local_matrix() const { return local_; }
  [[nodiscard]] const std::vector<Index>& boundary() const { return boundary_; }
  [[nodiscard]] const std::vector<Index>& interior() const { return interior_; }

 private:
  SparseMatrix local_;
  std::vector<Index> boundary_;
  std::vector<Index> interior_;
  SparseMatrix a_bb_;
  SparseMatrix a_bi_;
  SparseMatrix a_ib_;
  SymmetricFactor neumann_;
  SymmetricFactor dirichlet_;
};

/// Schur operators T = diag(T_1, …, T_J) on the boundary tuple space and the
/// global Schur complement R^T T R on the skeleton, all matrix-free.
class SchurSystem {
 public:
  SchurSystem(FieldKind kind, const FieldSpaces& spaces, const SparseSymOp& block_op, IndexMap skeleton_restriction);

  [[nodiscard]] FieldKind kind() const { return kind_; }
  [[nodiscard]] int num_subdomains() const { return static_cast<int>(solvers_.size()); }
  [[nodiscard]] Index skeleton_dim() const { return restriction_.source_dim(); }
  [[nodiscard]] Index tuple_dim() const { return restriction_.target_dim(); }
  [[nodiscard]] Index broken_dim() const { return broken_offsets_.back(); }
  [[nodiscard]] const IndexMap& restriction() const { return restriction_; }
  [[nodiscard]] const SubdomainSolver& subdomain(int j) const { return solvers_[static_cast<std::size_t>(j)]; }
  [[nodiscard]] const std::vector<Index>& tuple_offsets() const { return tuple_offsets_; }
  [[nodiscard]] const std::vector<Index>& broken_offsets() const { return broken_offsets_; }

  [[nodiscard]] Vector apply_T(const Vector& p) const;
  [[nodiscard]] Vector apply_Tinv(const Vector& g) const;
  /// Boundary tuple → broken space.
  [[nodiscard]] Vector harmonic_lift(const Vector& p) const;
  /// (R^T T R) u, gathered in ascending subdomain order.
  [[nodiscard]] Vector apply(const Vector& u) const;

  [[nodiscard]] LinearOperator as_operator() const;

 private:
  template <class Fn>
  Vector blockwise(const Vector& x, const std::vector<Index>& in_offsets, const std::vector<Index>& out_offsets,
                   Fn&& fn) const;

  FieldKind kind_;
  IndexMap restriction_;
  std::vector<SubdomainSolver> solvers_;
  std::vector<Index> tuple_offsets_;
  std::vector<Index> broken_offsets_;
};

}  // namespace subhx
