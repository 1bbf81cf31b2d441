#include "subhx/oracle.hpp"

#include <ostream>
#include <sstream>

#include "subhx/problem.hpp"

namespace subhx {

void DenseOp::check() const {
  if (!spd) return;
  if (rows() != cols()) throw SingularityError("SPD operator must be square");
  const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
  if ((entries - entries.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw SingularityError("SPD operator is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(entries);
  if (llt.info() != Eigen::Success) throw SingularityError("SPD operator is not positive definite");
}

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& a) {
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) throw SingularityError("spd_inverse: matrix not SPD");
  return llt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
}

double relative_max_diff(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw DimensionError("relative_max_diff: shape mismatch");
  if (x.size() == 0) return 0.0;
  const double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
  return (x - y).cwiseAbs().maxCoeff() / scale;
}

namespace {

void require_full_rank(const Eigen::MatrixXd& m, Index expected, const char* what) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (lu.rank() < expected) throw SingularityError(std::string(what) + " is rank deficient");
}

}  // namespace

DenseOp pseudoinverse_surjective(const DenseOp& theta, const DenseOp& a) {
  a.check();
  require_dim(theta.cols(), a.rows(), "pseudoinverse_surjective");
  require_full_rank(theta.entries, theta.rows(), "Theta");
  Eigen::LLT<Eigen::MatrixXd> llt(a.entries);
  if (llt.info() != Eigen::Success) throw SingularityError("pseudoinverse_surjective: A not SPD");
  const Eigen::MatrixXd ainv_tt = llt.solve(theta.entries.transpose());
  const Eigen::MatrixXd gram = theta.entries * ainv_tt;
  Eigen::LLT<Eigen::MatrixXd> gram_llt(gram);
  if (gram_llt.info() != Eigen::Success) throw SingularityError("Theta A^-1 Theta^T is singular");
  // Θ†_A = A^{-1}Θ^T G^{-1}; G is symmetric so solve G X^T = (A^{-1}Θ^T)^T.
  const Eigen::MatrixXd result = gram_llt.solve(ainv_tt.transpose()).transpose();
  return DenseOp(result);
}

DenseOp pseudoinverse_injective(const DenseOp& phi, const DenseOp& a) {
  a.check();
  require_dim(phi.rows(), a.rows(), "pseudoinverse_injective");
  require_full_rank(phi.entries, phi.cols(), "Phi");
  const Eigen::MatrixXd pta = phi.entries.transpose() * a.entries;
  const Eigen::MatrixXd gram = pta * phi.entries;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) throw SingularityError("Phi^T A Phi is singular");
  return DenseOp(llt.solve(pta));
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

const IdentityCheck* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void VerifyReport::write_csv(std::ostream& os) const {
  os << "identity,mesh,residual,tolerance,status\n";
  const auto old_precision = os.precision(6);
  for (const auto& c : checks) {
    os << c.name << ',' << c.mesh << ',' << std::scientific << c.residual << ',' << c.tolerance << std::defaultfloat
       << ',' << (c.passed ? "pass" : "FAIL") << '\n';
  }
  os.precision(old_precision);
}

namespace {

Eigen::MatrixXd dense(const SparseMatrix& m) { return Eigen::MatrixXd(m); }

class Recorder {
 public:
  Recorder(VerifyReport& report, std::string mesh) : report_(report), mesh_(std::move(mesh)) {}

  /// Pass iff residual <= tolerance.
  void bound(const std::string& name, double residual, double tolerance) {
    report_.checks.push_back({name, mesh_, residual, tolerance, residual <= tolerance});
  }
  /// Inequality lhs <= rhs; residual is the ratio lhs/rhs, accepted up to a
  /// relative rounding slack.
  void inequality(const std::string& name, double lhs, double rhs) {
    const double ratio = lhs / rhs;
    report_.checks.push_back({name, mesh_, ratio, 1.0, ratio <= 1.0 + 1e-9});
  }

 private:
  VerifyReport& report_;
  std::string mesh_;
};

template <class Fn>
Eigen::MatrixXd columns(Fn&& fn, Index in_dim) {
  Eigen::MatrixXd m;
  Vector e = Vector::Zero(in_dim);
  for (Index i = 0; i < in_dim; ++i) {
    e[i] = 1.0;
    const Vector col = fn(e);
    if (i == 0) m.resize(col.size(), in_dim);
    m.col(i) = col;
    e[i] = 0.0;
  }
  return m;
}

Eigen::MatrixXd hx_volume_inverse(const Eigen::MatrixXd& jacobi_inv, const Eigen::MatrixXd& grad,
                                  const std::array<Eigen::MatrixXd, 3>& interp, const Eigen::MatrixXd& scalar_inv) {
  Eigen::MatrixXd out = jacobi_inv + grad * scalar_inv * grad.transpose();
  for (const auto& p : interp) out += p * scalar_inv * p.transpose();
  return out;
}

}  // namespace

VerifyReport verify_identities(const VerifyOptions& opt) {
  const Discretization disc = build_discretization(opt.cells_per_axis, opt.subdomain_grid);
  if (disc.spaces.edge.volume.dim > kVerifyDofCap || disc.spaces.edge.broken.dim > 2 * kVerifyDofCap) {
    throw ConfigError("verify: mesh has " + std::to_string(disc.spaces.edge.volume.dim) +
                      " edge dofs, above the dense cap of " + std::to_string(kVerifyDofCap) +
                      "; use fewer cells (e.g. --cells 2,2,2 or 4,4,4)");
  }
  const Coefficients coeffs = Coefficients::uniform(disc.mesh, opt.alpha, opt.beta, opt.gamma);
  const ScalarSubstructure sc = build_scalar(disc, coeffs);
  MaxwellSubstructure mx = build_maxwell(disc, coeffs);

  SparseMatrix grad_skel = mx.gradient_skeleton.matrix;
  if (opt.corrupt_gradient_sign && grad_skel.nonZeros() > 0) grad_skel.valuePtr()[0] = -grad_skel.valuePtr()[0];

  VerifyReport report;
  Recorder rec(report, "cells=" + to_string(opt.cells_per_axis) + ";subs=" + to_string(opt.subdomain_grid));

  const auto& st = disc.scalar_transfer;
  const auto& et = disc.edge_transfer;
  auto exact = [](const SparseMatrix& a, const SparseMatrix& b) {
    const SparseMatrix d = a - b;
    double m = 0.0;
    for (Index k = 0; k < d.nonZeros(); ++k) m = std::max(m, std::abs(d.valuePtr()[k]));
    return m;
  };

  // Commutation lattice, all in exact 0/±1 arithmetic.
  const SparseMatrix sB = st.skeleton_trace.to_sparse(), sR = st.volume_restriction.to_sparse();
  const SparseMatrix B = st.trace.to_sparse(), R = st.skeleton_restriction.to_sparse();
  const SparseMatrix eSB = et.skeleton_trace.to_sparse(), eSR = et.volume_restriction.to_sparse();
  const SparseMatrix eB = et.trace.to_sparse(), eR = et.skeleton_restriction.to_sparse();
  rec.bound("commutation_scalar", exact(B * sR, R * sB), 0.0);
  rec.bound("commutation_edge", exact(eB * eSR, eR * eSB), 0.0);

  const GradientMap grad_vol = build_gradient(Variant::Volume, disc.mesh, disc.spaces);
  rec.bound("commutation_gradient", exact(eSB * grad_vol.matrix, grad_skel * sB), 0.0);
  static constexpr const char* kAxis[3] = {"x", "y", "z"};
  std::array<Eigen::MatrixXd, 3> interp_vol_dense;
  for (int j = 0; j < 3; ++j) {
    const NodalInterpMap pv = build_nodal_interp(Variant::Volume, j, disc.mesh, disc.spaces);
    rec.bound(std::string("commutation_interp_") + kAxis[j],
              exact(eSB * pv.matrix, mx.interp_skeleton[static_cast<std::size_t>(j)].matrix * sB), 0.0);
    interp_vol_dense[static_cast<std::size_t>(j)] = dense(pv.matrix);
  }

  rec.bound("assembly_scalar", exact(sc.global.matrix, SparseMatrix(sR.transpose()) * sc.blocks.matrix * sR), 0.0);
  rec.bound("assembly_edge", exact(mx.global.matrix, SparseMatrix(eSR.transpose()) * mx.blocks.matrix * eSR), 0.0);

  // Closed-form weighted pseudo-inverse of R.
  const Eigen::MatrixXd Rd = dense(R);
  const Eigen::MatrixXd D = disc.multiplicity.tuple_weights.asDiagonal();
  const Eigen::MatrixXd closed =
      disc.multiplicity.skeleton_degree.cwiseInverse().asDiagonal() * Rd.transpose() * D;
  const DenseOp rd_oracle = pseudoinverse_injective(DenseOp(Rd), DenseOp::spd_op(D));
  rec.bound("pseudoinverse_RD_closed_form", relative_max_diff(rd_oracle.entries, closed), 1e-12);

  // Schur inverse through the volume operator, scalar and edge.
  const Eigen::MatrixXd Lg = dense(sc.global.matrix);
  const Eigen::MatrixXd Lb = dense(sc.blocks.matrix);
  const Eigen::MatrixXd Lg_inv = spd_inverse(Lg);
  const Eigen::MatrixXd sBd = dense(sB), Bd = dense(B), sRd = dense(sR);
  const Eigen::MatrixXd S_L = materialize(sc.schur->as_operator(), sc.schur->skeleton_dim());
  const Eigen::MatrixXd S_L_inv_formula = sBd * Lg_inv * sBd.transpose();
  const Index nskel = S_L.rows();
  rec.bound("schur_inverse_scalar",
            relative_max_diff(S_L * S_L_inv_formula, Eigen::MatrixXd::Identity(nskel, nskel)), 1e-9);

  const Eigen::MatrixXd Mg = dense(mx.global.matrix);
  const Eigen::MatrixXd Mg_inv = spd_inverse(Mg);
  const Eigen::MatrixXd eSBd = dense(eSB);
  const Eigen::MatrixXd S_M = materialize(mx.schur->as_operator(), mx.schur->skeleton_dim());
  const Index neskel = S_M.rows();
  rec.bound("schur_inverse_edge",
            relative_max_diff(S_M * (eSBd * Mg_inv * eSBd.transpose()), Eigen::MatrixXd::Identity(neskel, neskel)),
            1e-9);

  // Pseudo-inverse commutation: 𝓡 𝓑†_𝓛 = B†_L R, with B†_L taken from the
  // harmonic lifting and 𝓑†_𝓛 from the dense oracle.
  const Eigen::MatrixXd lift = columns([&](const Vector& p) { return sc.schur->harmonic_lift(p); },
                                       sc.schur->tuple_dim());
  const DenseOp sB_pinv = pseudoinverse_surjective(DenseOp(sBd), DenseOp::spd_op(Lg));
  rec.bound("lift_restriction_commute", relative_max_diff(sRd * sB_pinv.entries, lift * Rd), 1e-9);

  const DenseOp B_pinv = pseudoinverse_surjective(DenseOp(Bd), DenseOp::spd_op(Lb));
  rec.bound("harmonic_lift_is_pseudoinverse", relative_max_diff(lift, B_pinv.entries), 1e-9);

  const Eigen::MatrixXd P = B_pinv.entries * Bd;
  rec.bound("projector_idempotent", relative_max_diff(P * P, P), 1e-10);
  rec.bound("projector_self_adjoint", relative_max_diff(Lb * P, P.transpose() * Lb), 1e-9);

  // T_L = (B†_L)^T L B†_L = (B L^{-1} B^T)^{-1}
  const Eigen::MatrixXd T_dense = columns([&](const Vector& p) { return sc.schur->apply_T(p); }, sc.schur->tuple_dim());
  rec.bound("dtn_weighted_form", relative_max_diff(T_dense, B_pinv.entries.transpose() * Lb * B_pinv.entries),
            1e-9);
  rec.bound("dtn_inverse_identity", relative_max_diff(T_dense, spd_inverse(Bd * spd_inverse(Lb) * Bd.transpose())),
            1e-9);

  // Preconditioners.
  const Eigen::MatrixXd Qnn = materialize([&](const Vector& f) { return sc.qnn->apply(f); }, nskel);
  rec.bound("qnn_symmetry", relative_max_diff(Qnn, Qnn.transpose()), 1e-12);

  const Vector jac_skel = skeleton_jacobi(mx.jacobi, disc.spaces.edge);
  std::array<SparseMatrix, 3> interp_skel = {mx.interp_skeleton[0].matrix, mx.interp_skeleton[1].matrix,
                                             mx.interp_skeleton[2].matrix};
  const NeumannNeumann& aux_qnn = *mx.auxiliary.qnn;
  const HiptmairXu qhx(jac_skel, grad_skel, interp_skel, [&](const Vector& f) { return aux_qnn.apply(f); });
  const Eigen::MatrixXd Qhx = materialize([&](const Vector& f) { return qhx.apply(f); }, neskel);
  rec.bound("qhx_symmetry", relative_max_diff(Qhx, Qhx.transpose()), 1e-12);

  // Q_HX with the exact scalar Schur inverse equals the trace of the volume
  // Hiptmair-Xu preconditioner.
  const HiptmairXu qhx_exact(jac_skel, grad_skel, interp_skel,
                             [&](const Vector& f) { return Vector(S_L_inv_formula * f); });
  const Eigen::MatrixXd Qhx_exact = materialize([&](const Vector& f) { return qhx_exact.apply(f); }, neskel);
  const Eigen::MatrixXd Mtilde_inv =
      hx_volume_inverse(mx.jacobi.cwiseInverse().asDiagonal(), dense(grad_vol.matrix), interp_vol_dense, Lg_inv);
  rec.bound("hx_trace_of_volume", relative_max_diff(Qhx_exact, eSBd * Mtilde_inv * eSBd.transpose()), 1e-9);

  // Condition number inequalities.
  const Eigen::MatrixXd Lg_diag_inv = Lg.diagonal().cwiseInverse().asDiagonal();
  const ConditionEstimate cor_lhs = dense_condition(S_L, sBd * Lg_diag_inv * sBd.transpose());
  const ConditionEstimate cor_rhs = dense_condition(Lg, Lg_diag_inv);
  rec.inequality("diag_trace_cond_bound", cor_lhs.cond, cor_rhs.cond);

  const ConditionEstimate hx_skel = dense_condition(S_M, Qhx);
  const ConditionEstimate nn = dense_condition(S_L, Qnn);
  const ConditionEstimate hx_vol = dense_condition(Mg, Mtilde_inv);
  rec.inequality("hx_cond_product_bound", hx_skel.cond, nn.cond * hx_vol.cond);

  if (disc.mesh.num_subdomains() == 1) {
    rec.bound("qnn_exact_single_subdomain", relative_max_diff(Qnn * S_L, Eigen::MatrixXd::Identity(nskel, nskel)),
              1e-10);
  }
  return report;
}

}  // namespace subhx
