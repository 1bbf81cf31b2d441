#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "subhx/types.hpp"

namespace subhx {

inline constexpr const char* kStoppingCriterion = "sqrt(<z_k,r_k>)/sqrt(<z_0,r_0>)";

struct ConvergenceHistory {
  /// relres[0] == 1; relres[k] is the preconditioned residual ratio after k iterations.
  std::vector<double> relres;
  int iterations = 0;
  double wall_seconds = 0.0;
  bool converged = false;
  double tolerance = 1e-9;
  int max_iterations = 1000;
};

struct ProblemMetadata {
  std::string problem;
  Index dim_skeleton = 0;
  Index dim_volume = 0;
  Grid3 cells_per_axis;
  Grid3 subdomain_grid;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  std::uint64_t seed = 0;
};

struct SolveReport {
  Vector solution;
  ConvergenceHistory history;
  ProblemMetadata metadata;
  /// CG step lengths and direction updates, for Lanczos spectrum estimates.
  std::vector<double> cg_alpha;
  std::vector<double> cg_beta;
};

struct PcgOptions {
  double tol = 1e-9;
  int max_iter = 1000;
  /// Called after every iteration with (k, x_k).
  std::function<void(int, const Vector&)> observer;
};

/// Preconditioned conjugate gradient from a zero initial guess. Throws
/// SolverBreakdown on non-positive curvature, an indefinite preconditioner
/// or a non-finite inner product.
SolveReport pcg(const LinearOperator& op, const LinearOperator& prec, const Vector& rhs, const PcgOptions& options = {});

/// Extremal eigenvalues of the Lanczos tridiagonal matrix recovered from CG
/// coefficients. Returns {lambda_min, lambda_max}.
std::pair<double, double> lanczos_extremal_eigenvalues(const std::vector<double>& cg_alpha,
                                                       const std::vector<double>& cg_beta);

/// splitmix64 generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  /// Uniform on [-1, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-52 - 1.0; }

 private:
  std::uint64_t state_;
};

Vector random_uniform_vector(Index n, SplitMix64& rng);

}  // namespace subhx
