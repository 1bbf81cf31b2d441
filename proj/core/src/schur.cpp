#include "subhx/schur.hpp"

namespace subhx {

SymmetricFactor::SymmetricFactor(const SparseMatrix& a) : dim_(a.rows()) {
  require_dim(a.cols(), a.rows(), "SymmetricFactor");
  if (dim_ == 0) return;
  if (dim_ <= kDenseCutoff) {
    const Eigen::MatrixXd dense(a);
    Dense llt(dense);
    if (llt.info() != Eigen::Success) throw SingularityError("dense Cholesky failed: matrix not SPD");
    factor_ = std::move(llt);
  } else {
    auto ldlt = std::make_unique<Sparse>(a);
    if (ldlt->info() != Eigen::Success) throw SingularityError("sparse LDL^T failed");
    if ((ldlt->vectorD().array() <= 0.0).any()) throw SingularityError("sparse LDL^T: matrix not SPD");
    factor_ = std::move(ldlt);
  }
}

Vector SymmetricFactor::solve(const Vector& b) const {
  require_dim(b.size(), dim_, "SymmetricFactor::solve");
  if (dim_ == 0) return Vector(0);
  if (const auto* d = std::get_if<Dense>(&factor_)) return d->solve(b);
  return std::get<std::unique_ptr<Sparse>>(factor_)->solve(b);
}

SparseMatrix extract_block(const SparseMatrix& a, const std::vector<Index>& rows, const std::vector<Index>& cols) {
  std::vector<Index> row_pos(static_cast<std::size_t>(a.rows()), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos[static_cast<std::size_t>(rows[i])] = static_cast<Index>(i);
  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (SparseMatrix::InnerIterator it(a, cols[c]); it; ++it) {
      const Index r = row_pos[static_cast<std::size_t>(it.row())];
      if (r >= 0) trips.emplace_back(r, static_cast<Index>(c), it.value());
    }
  SparseMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

SubdomainSolver::SubdomainSolver(const SparseMatrix& local, const SubdomainDofs& dofs)
    : local_(local), boundary_(dofs.boundary_local), interior_(dofs.interior_local) {
  require_dim(local.rows(), dofs.num_local(), "SubdomainSolver");
  a_bb_ = extract_block(local_, boundary_, boundary_);
  a_bi_ = extract_block(local_, boundary_, interior_);
  a_ib_ = extract_block(local_, interior_, boundary_);
  neumann_ = SymmetricFactor(local_);
  dirichlet_ = SymmetricFactor(extract_block(local_, interior_, interior_));
}

Vector SubdomainSolver::apply_T(const Vector& p) const {
  require_dim(p.size(), num_boundary(), "SubdomainSolver::apply_T");
  Vector out = a_bb_ * p;
  if (num_interior() > 0) out -= a_bi_ * dirichlet_.solve(a_ib_ * p);
  return out;
}

Vector SubdomainSolver::apply_Tinv(const Vector& g) const {
  require_dim(g.size(), num_boundary(), "SubdomainSolver::apply_Tinv");
  Vector rhs = Vector::Zero(num_local());
  for (std::size_t k = 0; k < boundary_.size(); ++k) rhs[boundary_[k]] = g[static_cast<Index>(k)];
  const Vector sol = neumann_.solve(rhs);
  Vector out(num_boundary());
  for (std::size_t k = 0; k < boundary_.size(); ++k) out[static_cast<Index>(k)] = sol[boundary_[k]];
  return out;
}

Vector SubdomainSolver::harmonic_lift(const Vector& p) const {
  require_dim(p.size(), num_boundary(), "SubdomainSolver::harmonic_lift");
  Vector out = Vector::Zero(num_local());
  for (std::size_t k = 0; k < boundary_.size(); ++k) out[boundary_[k]] = p[static_cast<Index>(k)];
  if (num_interior() > 0) {
    const Vector inner = -dirichlet_.solve(a_ib_ * p);
    for (std::size_t k = 0; k < interior_.size(); ++k) out[interior_[k]] = inner[static_cast<Index>(k)];
  }
  return out;
}

SchurSystem::SchurSystem(FieldKind kind, const FieldSpaces& spaces, const SparseSymOp& block_op,
                         IndexMap skeleton_restriction)
    : kind_(kind),
      restriction_(std::move(skeleton_restriction)),
      tuple_offsets_(spaces.boundary_tuple.block_offsets),
      broken_offsets_(spaces.broken.block_offsets) {
  const bool block_kind = block_op.kind == OperatorKind::ScalarBlock || block_op.kind == OperatorKind::EdgeBlock;
  if (!block_kind) throw DimensionError("SchurSystem needs a per-subdomain operator");
  require_dim(static_cast<Index>(block_op.blocks.size()), static_cast<Index>(spaces.subdomains.size()),
              "SchurSystem blocks");
  require_dim(restriction_.target_dim(), spaces.boundary_tuple.dim, "SchurSystem restriction");
  solvers_.reserve(block_op.blocks.size());
  for (std::size_t j = 0; j < block_op.blocks.size(); ++j) solvers_.emplace_back(block_op.blocks[j], spaces.subdomains[j]);
}

template <class Fn>
Vector SchurSystem::blockwise(const Vector& x, const std::vector<Index>& in_offsets,
                              const std::vector<Index>& out_offsets, Fn&& fn) const {
  require_dim(x.size(), in_offsets.back(), "SchurSystem block input");
  Vector y(out_offsets.back());
  for (int j = 0; j < num_subdomains(); ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const Vector xj = x.segment(in_offsets[ju], in_offsets[ju + 1] - in_offsets[ju]);
    y.segment(out_offsets[ju], out_offsets[ju + 1] - out_offsets[ju]) = fn(solvers_[ju], xj);
  }
  return y;
}

Vector SchurSystem::apply_T(const Vector& p) const {
  return blockwise(p, tuple_offsets_, tuple_offsets_, [](const SubdomainSolver& s, const Vector& v) { return s.apply_T(v); });
}

Vector SchurSystem::apply_Tinv(const Vector& g) const {
  return blockwise(g, tuple_offsets_, tuple_offsets_, [](const SubdomainSolver& s, const Vector& v) { return s.apply_Tinv(v); });
}

Vector SchurSystem::harmonic_lift(const Vector& p) const {
  return blockwise(p, tuple_offsets_, broken_offsets_,
                   [](const SubdomainSolver& s, const Vector& v) { return s.harmonic_lift(v); });
}

Vector SchurSystem::apply(const Vector& u) const {
  require_dim(u.size(), skeleton_dim(), "SchurSystem::apply");
  return restriction_.apply_transpose(apply_T(restriction_.apply(u)));
}

LinearOperator SchurSystem::as_operator() const {
  return [this](const Vector& u) { return apply(u); };
}

}  // namespace subhx
