#include "subhx/precond.hpp"

#include <Eigen/Eigenvalues>

#include "subhx/krylov.hpp"

namespace subhx {

NeumannNeumann::NeumannNeumann(std::shared_ptr<const SchurSystem> scalar_schur, Multiplicity multiplicity)
    : schur_(std::move(scalar_schur)), multiplicity_(std::move(multiplicity)) {
  if (schur_->kind() != FieldKind::Scalar) throw DimensionError("Neumann-Neumann needs the scalar Schur system");
  require_dim(multiplicity_.skeleton_degree.size(), schur_->skeleton_dim(), "NeumannNeumann D_Sigma");
  require_dim(multiplicity_.tuple_weights.size(), schur_->tuple_dim(), "NeumannNeumann D");
}

Vector NeumannNeumann::apply(const Vector& f) const {
  require_dim(f.size(), dim(), "NeumannNeumann::apply");
  calls_.fetch_add(1);
  const auto& d = multiplicity_.tuple_weights;
  const auto& deg = multiplicity_.skeleton_degree;
  const Vector scaled = f.cwiseQuotient(deg);
  const Vector local = schur_->apply_Tinv(d.cwiseProduct(schur_->restriction().apply(scaled)));
  return schur_->restriction().apply_transpose(d.cwiseProduct(local)).cwiseQuotient(deg);
}

HiptmairXu::HiptmairXu(Vector skeleton_jacobi, SparseMatrix gradient_skeleton,
                       std::array<SparseMatrix, 3> interp_skeleton, LinearOperator scalar_inverse)
    : skeleton_jacobi_(std::move(skeleton_jacobi)),
      gradient_(std::move(gradient_skeleton)),
      interp_(std::move(interp_skeleton)),
      scalar_inverse_(std::move(scalar_inverse)) {
  require_dim(gradient_.rows(), dim(), "HiptmairXu gradient rows");
  for (const auto& m : interp_) {
    require_dim(m.rows(), dim(), "HiptmairXu interpolation rows");
    require_dim(m.cols(), gradient_.cols(), "HiptmairXu interpolation cols");
  }
  if ((skeleton_jacobi_.array() <= 0.0).any()) throw DimensionError("HiptmairXu: Jacobi diagonal must be positive");
  gradient_t_ = gradient_.transpose();
  for (int j = 0; j < 3; ++j) interp_t_[j] = interp_[j].transpose();
}

Vector HiptmairXu::apply_term(int term, const Vector& f) const {
  require_dim(f.size(), dim(), "HiptmairXu::apply");
  switch (term) {
    case 0: return f.cwiseQuotient(skeleton_jacobi_);
    case 1: return gradient_ * scalar_inverse_(gradient_t_ * f);
    case 2:
    case 3:
    case 4: {
      const auto j = static_cast<std::size_t>(term - 2);
      return interp_[j] * scalar_inverse_(interp_t_[j] * f);
    }
    default: throw DimensionError("HiptmairXu: term index out of range");
  }
}

Vector HiptmairXu::apply(const Vector& f) const {
  Vector out = apply_term(0, f);
  for (int t = 1; t < kNumTerms; ++t) out += apply_term(t, f);
  return out;
}

Vector skeleton_jacobi(const Vector& global_jacobi, const FieldSpaces& edge_spaces) {
  require_dim(global_jacobi.size(), edge_spaces.volume.dim, "skeleton_jacobi");
  Vector d(edge_spaces.skeleton.dim);
  for (Index s = 0; s < d.size(); ++s) d[s] = global_jacobi[edge_spaces.skeleton_to_global[static_cast<std::size_t>(s)]];
  return d;
}

Eigen::MatrixXd materialize(const LinearOperator& op, Index dim) {
  Eigen::MatrixXd m(dim, dim);
  Vector e = Vector::Zero(dim);
  for (Index i = 0; i < dim; ++i) {
    e[i] = 1.0;
    const Vector col = op(e);
    require_dim(col.size(), dim, "materialize");
    m.col(i) = col;
    e[i] = 0.0;
  }
  return m;
}

ConditionEstimate dense_condition(const Eigen::MatrixXd& op, const Eigen::MatrixXd& prec) {
  require_dim(op.rows(), prec.rows(), "dense_condition");
  const Eigen::MatrixXd p = 0.5 * (prec + prec.transpose());
  const Eigen::MatrixXd a = 0.5 * (op + op.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(p);
  if (llt.info() != Eigen::Success) throw SingularityError("dense_condition: preconditioner is not SPD");
  const Eigen::MatrixXd c = llt.matrixL();
  const Eigen::MatrixXd sym = c.transpose() * a * c;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  ConditionEstimate est;
  est.lambda_min = es.eigenvalues()[0];
  est.lambda_max = es.eigenvalues()[es.eigenvalues().size() - 1];
  est.cond = est.lambda_max / est.lambda_min;
  return est;
}

ConditionEstimate estimate_condition(const LinearOperator& op, const LinearOperator& prec, Index dim,
                                     ConditionMethod method, std::uint64_t seed) {
  if (method == ConditionMethod::Dense) {
    if (dim > kDenseConditionCap) {
      throw DimensionError("estimate_condition: dimension " + std::to_string(dim) + " exceeds dense cap " +
                           std::to_string(kDenseConditionCap) + "; use the Lanczos method");
    }
    return dense_condition(materialize(op, dim), materialize(prec, dim));
  }
  SplitMix64 rng(seed);
  const Vector rhs = random_uniform_vector(dim, rng);
  PcgOptions opts;
  opts.tol = 1e-14;
  opts.max_iter = static_cast<int>(std::min<Index>(dim, 500));
  const SolveReport rep = pcg(op, prec, rhs, opts);
  const auto [lo, hi] = lanczos_extremal_eigenvalues(rep.cg_alpha, rep.cg_beta);
  return {lo, hi, hi / lo};
}

}  // namespace subhx
