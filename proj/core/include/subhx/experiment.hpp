#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "subhx/krylov.hpp"
#include "subhx/oracle.hpp"
#include "subhx/types.hpp"

namespace subhx {

enum class ProblemKind { Scalar, Maxwell, Verify };

const char* to_string(ProblemKind kind);
ProblemKind parse_problem(const std::string& name);
Grid3 parse_grid(const std::string& text);

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::Scalar;
  Grid3 cells_per_axis{6, 6, 6};
  Grid3 subdomain_grid{3, 3, 3};
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double tol = 1e-9;
  int max_iter = 1000;
  std::uint64_t seed = 1;

  std::string out_path;      // convergence CSV
  std::string summary_path;  // dim_skeleton,dim_volume,iters
  std::string vtk_path;
  std::string report_path;   // verify report
  bool corrupt_gradient_sign = false;

  /// Throws ConfigError with a message naming the offending field.
  void validate() const;
  /// Applies one key=value setting; keys match the long flag names.
  void set(const std::string& key, const std::string& value);
  /// Reads key=value lines ('#' starts a comment).
  void load_file(const std::string& path);
  /// Effective settings as key=value pairs, in a fixed order.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> entries() const;
};

struct ExperimentResult {
  SolveReport report;
  /// ‖u − u_ex‖₂ / ‖u_ex‖₂ for the manufactured solution.
  double relative_error = 0.0;
};

/// Builds the problem, draws u_ex from the seed, sets f = S u_ex and solves
/// with Q_NN (scalar) or Q_HX (maxwell). Writes the configured files.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Header comments plus `iter,relres` rows. Wall time is left out so reruns
/// are byte identical.
void write_history_csv(std::ostream& os, const ExperimentConfig& config, const SolveReport& report);

struct TableRow {
  Grid3 cells;
  Index dim_skeleton = 0;
  Index dim_volume = 0;
  int iterations = 0;
  bool converged = false;
  double relative_error = 0.0;
  double wall_seconds = 0.0;
};

inline constexpr int kTableCells[4] = {3, 6, 9, 12};

/// Runs the refinement sequence kTableCells with the configured subdomains.
std::vector<TableRow> run_table(const ExperimentConfig& config);
void write_summary(std::ostream& os, const std::vector<TableRow>& rows);

/// Dense identity checks; the report file is written if configured.
VerifyReport run_verify(const ExperimentConfig& config);

}  // namespace subhx
