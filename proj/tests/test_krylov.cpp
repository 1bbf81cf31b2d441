#include <gtest/gtest.h>

#include "subhx/krylov.hpp"
#include "test_util.hpp"

using namespace subhx;

namespace {
LinearOperator dense_op(const Eigen::MatrixXd& a) {
  return [a](const Vector& x) { return Vector(a * x); };
}
const LinearOperator kIdentity = [](const Vector& x) { return x; };
}  // namespace

TEST(Pcg, IdentityOneIteration) {
  SplitMix64 rng(1);
  const Vector b = random_uniform_vector(10, rng);
  const SolveReport r = pcg(kIdentity, kIdentity, b);
  EXPECT_TRUE(r.history.converged);
  EXPECT_EQ(r.history.iterations, 1);
  EXPECT_LE((r.solution - b).norm(), 1e-15);
}

TEST(Pcg, TwoEigenvaluesTwoIterations) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 10.0;
  const SolveReport r = pcg(dense_op(a), kIdentity, Vector::Ones(2));
  EXPECT_TRUE(r.history.converged);
  EXPECT_LE(r.history.iterations, 2);
}

TEST(Pcg, FiniteTermination) {
  SplitMix64 rng(7);
  for (int n : {5, 12, 20, 30}) {
    const Eigen::MatrixXd a = test::random_spd(n, rng);
    PcgOptions o;
    o.tol = 1e-14;
    const SolveReport r = pcg(dense_op(a), kIdentity, random_uniform_vector(n, rng), o);
    EXPECT_TRUE(r.history.converged);
    EXPECT_LE(r.history.iterations, n + 2);
  }
}

TEST(Pcg, ManufacturedAndEnergyMonotone) {
  SplitMix64 rng(9);
  const int n = 25;
  const Eigen::MatrixXd a = test::random_spd(n, rng);
  const Vector dinv = a.diagonal().cwiseInverse();
  const Vector u = random_uniform_vector(n, rng);
  std::vector<double> energy;
  PcgOptions o;
  o.observer = [&](int, const Vector& x) {
    const Vector e = x - u;
    energy.push_back(std::sqrt(e.dot(a * e)));
  };
  const SolveReport r = pcg(dense_op(a), [&](const Vector& x) { return Vector(dinv.cwiseProduct(x)); }, a * u, o);
  ASSERT_TRUE(r.history.converged);
  EXPECT_LE((r.solution - u).norm() / u.norm(), 100 * o.tol);
  ASSERT_FALSE(energy.empty());
  for (std::size_t k = 1; k < energy.size(); ++k) EXPECT_LE(energy[k], energy[k - 1] * (1 + 1e-12));
  EXPECT_EQ(r.history.relres.size(), static_cast<std::size_t>(r.history.iterations) + 1);
  EXPECT_EQ(r.history.relres.front(), 1.0);
}

TEST(Pcg, Deterministic) {
  SplitMix64 rng(13);
  const Eigen::MatrixXd a = test::random_spd(40, rng);
  const Vector b = random_uniform_vector(40, rng);
  const SolveReport r1 = pcg(dense_op(a), kIdentity, b), r2 = pcg(dense_op(a), kIdentity, b);
  EXPECT_EQ(r1.history.relres, r2.history.relres);
  EXPECT_EQ(r1.solution, r2.solution);
}

TEST(Pcg, ZeroRhsAndBreakdown) {
  const SolveReport z = pcg(kIdentity, kIdentity, Vector::Zero(4));
  EXPECT_TRUE(z.history.converged);
  EXPECT_EQ(z.solution, Vector::Zero(4));
  Eigen::MatrixXd ind = Eigen::MatrixXd::Identity(2, 2);
  ind(1, 1) = -1.0;
  EXPECT_THROW(pcg(dense_op(ind), kIdentity, (Vector(2) << 1.0, 2.0).finished()), SolverBreakdown);
  EXPECT_THROW(pcg(kIdentity, dense_op(ind), (Vector(2) << 0.0, 1.0).finished()), SolverBreakdown);
  EXPECT_THROW(pcg(kIdentity, kIdentity, Vector::Ones(3), PcgOptions{0.0, 10, {}}), ConfigError);
}

TEST(Pcg, MaxIterReported) {
  SplitMix64 rng(4);
  const Eigen::MatrixXd a = test::random_spd(30, rng);
  PcgOptions o;
  o.max_iter = 3;
  o.tol = 1e-14;
  const SolveReport r = pcg(dense_op(a), kIdentity, random_uniform_vector(30, rng), o);
  EXPECT_FALSE(r.history.converged);
  EXPECT_EQ(r.history.iterations, 3);
}

TEST(Lanczos, RecoversExtremeEigenvalues) {
  Eigen::VectorXd d(6);
  d << 1, 2, 3, 4, 5, 8;
  PcgOptions o;
  o.tol = 1e-14;
  const SolveReport r = pcg(dense_op(d.asDiagonal()), kIdentity, Vector::Ones(6), o);
  const auto [lo, hi] = lanczos_extremal_eigenvalues(r.cg_alpha, r.cg_beta);
  EXPECT_NEAR(lo, 1.0, 1e-8);
  EXPECT_NEAR(hi, 8.0, 1e-8);
}

TEST(SplitMix, KnownSequenceAndRange) {
  // Reference outputs of splitmix64 for seed 0.
  SplitMix64 g(0);
  EXPECT_EQ(g.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(g.next(), 0x6E789E6AA1B965F4ULL);
  SplitMix64 u(42);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    EXPECT_GE(x, -1.0);
    EXPECT_LT(x, 1.0);
  }
}
