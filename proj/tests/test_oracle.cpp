#include <gtest/gtest.h>

#include <Eigen/SVD>

#include "subhx/oracle.hpp"
#include "subhx/problem.hpp"
#include "test_util.hpp"

using namespace subhx;
using Eigen::MatrixXd;

namespace {

// Minimal-A-norm solution of Θv = y through the KKT system.
Vector kkt_min_norm(const MatrixXd& theta, const MatrixXd& a, const Vector& y) {
  const Index n = a.rows(), m = theta.rows();
  MatrixXd k = MatrixXd::Zero(n + m, n + m);
  k.topLeftCorner(n, n) = a;
  k.topRightCorner(n, m) = theta.transpose();
  k.bottomLeftCorner(m, n) = theta;
  Vector rhs = Vector::Zero(n + m);
  rhs.tail(m) = y;
  return k.fullPivLu().solve(rhs).head(n);
}

}  // namespace

TEST(Pseudoinverse, IdentityMaps) {
  SplitMix64 rng(1);
  const MatrixXd a = test::random_spd(6, rng);
  const MatrixXd id = MatrixXd::Identity(6, 6);
  EXPECT_LE(relative_max_diff(pseudoinverse_surjective(DenseOp(id), DenseOp::spd_op(a)).entries, id), 1e-12);
  EXPECT_LE(relative_max_diff(pseudoinverse_injective(DenseOp(id), DenseOp::spd_op(a)).entries, id), 1e-12);
}

TEST(Pseudoinverse, UnweightedMatchesSvd) {
  SplitMix64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const MatrixXd theta = test::random_matrix(3, 5, rng);
    const Eigen::JacobiSVD<MatrixXd> svd(theta, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector sinv = svd.singularValues().cwiseInverse();
    const MatrixXd mp = svd.matrixV() * sinv.asDiagonal() * svd.matrixU().transpose();
    const DenseOp p = pseudoinverse_surjective(DenseOp(theta), DenseOp::spd_op(MatrixXd::Identity(5, 5)));
    EXPECT_LE(test::max_abs(MatrixXd(p.entries - mp)), 1e-10);
  }
}

TEST(Pseudoinverse, SurjectiveIdentities) {
  SplitMix64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Index n = 4 + static_cast<Index>(rng.next() % 9), m = 1 + static_cast<Index>(rng.next() % std::min<Index>(8, n));
    const MatrixXd a = test::random_spd(n, rng);
    const MatrixXd theta = test::random_matrix(m, n, rng);
    const MatrixXd tp = pseudoinverse_surjective(DenseOp(theta), DenseOp::spd_op(a)).entries;
    EXPECT_LE(relative_max_diff(theta * tp, MatrixXd::Identity(m, m)), 1e-10);
    const MatrixXd lhs = spd_inverse(theta * spd_inverse(a) * theta.transpose());
    EXPECT_LE(relative_max_diff(lhs, tp.transpose() * a * tp), 1e-9);
    // Projector algebra.
    const MatrixXd p = tp * theta;
    EXPECT_LE(relative_max_diff(p * p, p), 1e-10);
    EXPECT_LE(relative_max_diff(a * p, p.transpose() * a), 1e-10);
    const Vector v = random_uniform_vector(n, rng);
    const Vector pv = p * v;
    EXPECT_LE(pv.dot(a * pv), v.dot(a * v) * (1 + 1e-10));
    // KKT and minimality against other preimages.
    const Vector y = random_uniform_vector(m, rng);
    const Vector best = tp * y;
    EXPECT_LE((best - kkt_min_norm(theta, a, y)).norm(), 1e-9 * std::max(1.0, best.norm()));
    for (int k = 0; k < 50; ++k) {
      const Vector w = random_uniform_vector(n, rng);
      const Vector other = best + (w - tp * (theta * w));
      EXPECT_LE(best.dot(a * best), other.dot(a * other) + 1e-10);
    }
  }
}

TEST(Pseudoinverse, InjectiveIdentities) {
  SplitMix64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const Index n = 3 + static_cast<Index>(rng.next() % 10), m = 1 + static_cast<Index>(rng.next() % std::min<Index>(8, n));
    const MatrixXd a = test::random_spd(n, rng);
    const MatrixXd phi = test::random_matrix(n, m, rng);
    const MatrixXd pp = pseudoinverse_injective(DenseOp(phi), DenseOp::spd_op(a)).entries;
    EXPECT_LE(relative_max_diff(pp * phi, MatrixXd::Identity(m, m)), 1e-10);
    const MatrixXd lhs = spd_inverse(phi.transpose() * a * phi);
    EXPECT_LE(relative_max_diff(lhs, pp * spd_inverse(a) * pp.transpose()), 1e-9);
    const MatrixXd proj = phi * pp;
    EXPECT_LE(relative_max_diff(proj * proj, proj), 1e-10);
    EXPECT_LE(relative_max_diff(a * proj, proj.transpose() * a), 1e-10);
    // Best approximation: Φ†_A v solves min ‖Φc − v‖_A, normal equations.
    const Vector v = random_uniform_vector(n, rng);
    const Vector c = pp * v;
    const Vector normal = (phi.transpose() * a * phi).ldlt().solve(phi.transpose() * a * v);
    EXPECT_LE((c - normal).norm(), 1e-9 * std::max(1.0, c.norm()));
  }
}

TEST(Pseudoinverse, RankDeficientThrows) {
  SplitMix64 rng(5);
  const MatrixXd a = test::random_spd(4, rng);
  MatrixXd theta = test::random_matrix(2, 4, rng);
  theta.row(1) = 2.0 * theta.row(0);
  EXPECT_THROW(pseudoinverse_surjective(DenseOp(theta), DenseOp::spd_op(a)), SingularityError);
  EXPECT_THROW(pseudoinverse_injective(DenseOp(MatrixXd(theta.transpose())), DenseOp::spd_op(a)), SingularityError);
  MatrixXd bad = a;
  bad(0, 1) += 1.0;
  EXPECT_THROW(pseudoinverse_surjective(DenseOp(MatrixXd::Identity(4, 4)), DenseOp::spd_op(bad)), SingularityError);
}

TEST(Pseudoinverse, RestrictionClosedForm) {
  const auto d = build_discretization({4, 4, 4}, {2, 2, 2});
  const MatrixXd R(d.scalar_transfer.skeleton_restriction.to_sparse());
  const MatrixXd D = d.multiplicity.tuple_weights.asDiagonal();
  const MatrixXd closed = d.multiplicity.skeleton_degree.cwiseInverse().asDiagonal() * R.transpose() * D;
  EXPECT_LE(test::max_abs(MatrixXd(pseudoinverse_injective(DenseOp(R), DenseOp::spd_op(D)).entries - closed)), 1e-12);
}

TEST(Duality, RangeOfTransposeAnnihilatesKernel) {
  const auto d = build_discretization({2, 2, 2}, {2, 1, 1});
  const MatrixXd B(d.scalar_transfer.trace.to_sparse());
  const Eigen::FullPivLU<MatrixXd> lu(B);
  const MatrixXd ker = lu.kernel();
  SplitMix64 rng(6);
  for (int t = 0; t < 10; ++t) {
    const Vector phi = random_uniform_vector(B.rows(), rng);
    EXPECT_LE((ker.transpose() * (B.transpose() * phi)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Verify, DefaultConfigPasses) {
  const VerifyReport r = verify_identities({});
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << " residual " << c.residual;
  EXPECT_EQ(r.find("qnn_exact_single_subdomain"), nullptr);
}

TEST(Verify, SingleSubdomainIncludesExactness) {
  VerifyOptions o;
  o.subdomain_grid = {1, 1, 1};
  const VerifyReport r = verify_identities(o);
  ASSERT_NE(r.find("qnn_exact_single_subdomain"), nullptr);
  EXPECT_TRUE(r.all_passed());
}

TEST(Verify, FaultInjectionFails) {
  VerifyOptions o;
  o.corrupt_gradient_sign = true;
  const VerifyReport r = verify_identities(o);
  EXPECT_FALSE(r.all_passed());
  ASSERT_NE(r.find("commutation_gradient"), nullptr);
  EXPECT_FALSE(r.find("commutation_gradient")->passed);
}

TEST(Verify, CapRefusesLargeMesh) {
  VerifyOptions o;
  o.cells_per_axis = {12, 12, 12};
  o.subdomain_grid = {2, 2, 2};
  EXPECT_THROW(verify_identities(o), ConfigError);
}
