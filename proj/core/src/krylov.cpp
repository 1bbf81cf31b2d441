#include "subhx/krylov.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace subhx {

SolveReport pcg(const LinearOperator& op, const LinearOperator& prec, const Vector& rhs, const PcgOptions& options) {
  if (!(options.tol > 0.0)) throw ConfigError("PCG tolerance must be positive");
  if (options.max_iter < 0) throw ConfigError("PCG max_iter must be non-negative");
  if (!rhs.allFinite()) throw SolverBreakdown("PCG: right-hand side is not finite");

  const auto start = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.history.tolerance = options.tol;
  rep.history.max_iterations = options.max_iter;
  rep.history.relres.push_back(1.0);

  Vector x = Vector::Zero(rhs.size());
  Vector r = rhs;
  Vector z = prec(r);
  require_dim(z.size(), rhs.size(), "PCG preconditioner output");
  double rho = z.dot(r);
  if (!std::isfinite(rho)) throw SolverBreakdown("PCG: NaN in preconditioned residual");
  if (rho < 0.0) throw SolverBreakdown("PCG: preconditioner is not positive definite (<z0,r0> < 0)");

  const double rho0 = rho;
  if (rho0 == 0.0) {
    rep.history.converged = true;
  }
  Vector p = z;
  for (int k = 1; k <= options.max_iter && !rep.history.converged; ++k) {
    const Vector q = op(p);
    require_dim(q.size(), rhs.size(), "PCG operator output");
    const double curvature = p.dot(q);
    if (!std::isfinite(curvature)) throw SolverBreakdown("PCG: NaN in <Ap,p> at iteration " + std::to_string(k));
    if (curvature <= 0.0) {
      throw SolverBreakdown("PCG: operator not SPD, <Ap,p> = " + std::to_string(curvature) + " at iteration " +
                            std::to_string(k));
    }
    const double step = rho / curvature;
    x += step * p;
    r -= step * q;
    z = prec(r);
    const double rho_next = z.dot(r);
    if (!std::isfinite(rho_next)) throw SolverBreakdown("PCG: NaN in <z,r> at iteration " + std::to_string(k));
    if (rho_next < 0.0) {
      throw SolverBreakdown("PCG: preconditioner not SPD, <z,r> < 0 at iteration " + std::to_string(k));
    }
    rep.cg_alpha.push_back(step);
    rep.history.iterations = k;
    const double rel = std::sqrt(rho_next / rho0);
    rep.history.relres.push_back(rel);
    if (options.observer) options.observer(k, x);
    if (rel <= options.tol) {
      rep.history.converged = true;
      break;
    }
    const double update = rho_next / rho;
    rep.cg_beta.push_back(update);
    p = z + update * p;
    rho = rho_next;
  }
  rep.solution = std::move(x);
  rep.history.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::pair<double, double> lanczos_extremal_eigenvalues(const std::vector<double>& cg_alpha,
                                                       const std::vector<double>& cg_beta) {
  const Index m = static_cast<Index>(cg_alpha.size());
  if (m == 0) throw DimensionError("lanczos: no CG steps recorded");
  Vector diag(m);
  Vector off(std::max<Index>(m - 1, 0));
  for (Index k = 0; k < m; ++k) {
    diag[k] = 1.0 / cg_alpha[static_cast<std::size_t>(k)];
    if (k > 0) diag[k] += cg_beta[static_cast<std::size_t>(k - 1)] / cg_alpha[static_cast<std::size_t>(k - 1)];
    if (k + 1 < m) off[k] = std::sqrt(cg_beta[static_cast<std::size_t>(k)]) / cg_alpha[static_cast<std::size_t>(k)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  return {es.eigenvalues()[0], es.eigenvalues()[m - 1]};
}

Vector random_uniform_vector(Index n, SplitMix64& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.uniform();
  return v;
}

}  // namespace subhx
