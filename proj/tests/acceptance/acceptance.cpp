// Acceptance checks 1-12. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "subhx/experiment.hpp"
#include "subhx/oracle.hpp"
#include "test_util.hpp"

using namespace subhx;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string mesh_name(Grid3 cells, Grid3 subs) { return "cells=" + to_string(cells) + ";subs=" + to_string(subs); }

// Verify reports are cached per mesh so criteria sharing a mesh reuse one run.
struct VerifyRun {
  VerifyReport report;
  double seconds = 0.0;
};

const VerifyRun& verify_on(Grid3 cells, Grid3 subs) {
  static std::map<std::string, VerifyRun> cache;
  const std::string key = mesh_name(cells, subs);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  VerifyOptions o;
  o.cells_per_axis = cells;
  o.subdomain_grid = subs;
  const auto t0 = Clock::now();
  VerifyRun run{verify_identities(o), 0.0};
  run.seconds = seconds_since(t0);
  return cache.emplace(key, std::move(run)).first->second;
}

// Worst residual of `name` across meshes, with every check required to pass.
Outcome identity_across(const std::string& name, const std::vector<std::pair<Grid3, Grid3>>& meshes,
                        double time_limit) {
  double worst = 0.0, tol = 0.0, secs = 0.0;
  bool ok = true;
  for (const auto& [c, s] : meshes) {
    const VerifyRun& run = verify_on(c, s);
    secs += run.seconds;
    const IdentityCheck* chk = run.report.find(name);
    if (!chk) return {false, name + " missing on " + mesh_name(c, s)};
    worst = std::max(worst, chk->residual);
    tol = chk->tolerance;
    ok = ok && chk->passed;
  }
  std::string d = "max residual " + fmt("%.3e", worst) + " (tol " + fmt("%.0e", tol) + ") over " +
                  std::to_string(meshes.size()) + " meshes";
  if (time_limit > 0) {
    d += ", " + fmt("%.2f", secs) + " s (limit " + fmt("%.0f", time_limit) + " s)";
    ok = ok && secs < time_limit;
  }
  return {ok, d};
}

const Grid3 k222{2, 2, 2};
const std::vector<std::pair<Grid3, Grid3>> kSmall = {{k222, {1, 1, 1}}, {k222, {2, 1, 1}}, {k222, {2, 2, 2}}};

Outcome pseudoinverse_identities() {
  SplitMix64 rng(20240101);
  double worst_surj = 0.0, worst_inj = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Index n = 4 + static_cast<Index>(rng.next() % 9);  // ≤ 12
    const Index m = 1 + static_cast<Index>(rng.next() % std::min<Index>(8, n));
    const Eigen::MatrixXd a = test::random_spd(n, rng);
    const Eigen::MatrixXd theta = test::random_matrix(m, n, rng);
    const Eigen::MatrixXd tp = pseudoinverse_surjective(DenseOp(theta), DenseOp::spd_op(a)).entries;
    worst_surj = std::max(worst_surj, relative_max_diff(tp.transpose() * a * tp,
                                                    spd_inverse(theta * spd_inverse(a) * theta.transpose())));
    const Eigen::MatrixXd phi = theta.transpose();
    const Eigen::MatrixXd pp = pseudoinverse_injective(DenseOp(phi), DenseOp::spd_op(a)).entries;
    worst_inj = std::max(worst_inj, relative_max_diff(pp * spd_inverse(a) * pp.transpose(),
                                                    spd_inverse(phi.transpose() * a * phi)));
  }
  const bool ok = worst_surj <= 1e-9 && worst_inj <= 1e-9;
  return {ok, "20 draws each; surjective " + fmt("%.3e", worst_surj) + ", injective " + fmt("%.3e", worst_inj) +
                  " (tol 1e-9)"};
}

Outcome commutation_lattice() {
  const std::vector<std::pair<Grid3, Grid3>> meshes = {
      {k222, {1, 1, 1}}, {k222, {2, 1, 1}}, {k222, {2, 2, 2}}, {{4, 4, 4}, {2, 2, 2}}, {{4, 2, 2}, {2, 1, 1}}};
  const char* names[] = {"commutation_scalar",   "commutation_edge",     "commutation_gradient",
                         "commutation_interp_x", "commutation_interp_y", "commutation_interp_z"};
  double worst = 0.0;
  bool ok = true;
  for (const char* n : names) {
    const Outcome o = identity_across(n, meshes, 0.0);
    ok = ok && o.pass;
    for (const auto& [c, s] : meshes) worst = std::max(worst, verify_on(c, s).report.find(n)->residual);
  }
  return {ok && worst == 0.0, "6 relations on 5 meshes, max residual " + fmt("%.1e", worst) + " (must be 0)"};
}

Outcome single_subdomain_pcg() {
  int worst = 0;
  bool ok = true;
  for (Grid3 c : {Grid3{2, 2, 2}, Grid3{4, 4, 4}, Grid3{6, 6, 6}}) {
    ExperimentConfig cfg;
    cfg.cells_per_axis = c;
    cfg.subdomain_grid = {1, 1, 1};
    cfg.tol = 1e-9;
    const ExperimentResult r = run_experiment(cfg);
    worst = std::max(worst, r.report.history.iterations);
    ok = ok && r.report.history.converged;
  }
  return {ok && worst <= 2, "max iterations " + std::to_string(worst) + " over 3 meshes (limit 2)"};
}

Outcome condition_bounds() {
  const auto t0 = Clock::now();
  const VerifyRun& run = verify_on(k222, k222);
  const IdentityCheck* fin = run.report.find("hx_cond_product_bound");
  const IdentityCheck* cor = run.report.find("diag_trace_cond_bound");
  if (!fin || !cor) return {false, "condition checks missing"};
  const double secs = run.seconds + seconds_since(t0);
  const bool ok = fin->passed && cor->passed && secs < 60.0;
  return {ok, "HX product bound ratio " + fmt("%.4f", fin->residual) + ", diagonal bound ratio " + fmt("%.4f", cor->residual) +
                  " (both must be <= 1), " + fmt("%.2f", secs) + " s"};
}

struct TableOutcome {
  Outcome table;
  double max_error = 0.0;
};

TableOutcome table_check(ProblemKind kind, int iter_cap, double growth_cap, double time_limit, bool total_time) {
  ExperimentConfig cfg;
  cfg.problem = kind;
  cfg.subdomain_grid = {3, 3, 3};
  cfg.alpha = cfg.beta = cfg.gamma = 1.0;
  cfg.tol = 1e-9;
  const auto t0 = Clock::now();
  const std::vector<TableRow> rows = run_table(cfg);
  const double total = seconds_since(t0);
  bool ok = true;
  double worst_growth = 0.0, largest = 0.0, max_err = 0.0;
  std::string iters;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ok = ok && rows[i].converged && rows[i].iterations <= iter_cap;
    if (i > 0) {
      const double g = static_cast<double>(rows[i].iterations) / rows[i - 1].iterations;
      worst_growth = std::max(worst_growth, g);
    }
    // Summary dims must grow along the sequence.
    if (i > 0) ok = ok && rows[i].dim_skeleton > rows[i - 1].dim_skeleton && rows[i].dim_volume > rows[i - 1].dim_volume;
    largest = std::max(largest, rows[i].wall_seconds);
    max_err = std::max(max_err, rows[i].relative_error);
    iters += (i ? "->" : "") + std::to_string(rows[i].iterations);
  }
  const double t = total_time ? total : largest;
  ok = ok && worst_growth <= growth_cap && t < time_limit;
  std::string d = "iterations " + iters + " (cap " + std::to_string(iter_cap) + "), max growth " +
                  fmt("%.3f", worst_growth) + " (cap " + fmt("%.2f", growth_cap) + "), " +
                  (total_time ? "total " : "largest run ") + fmt("%.2f", t) + " s";
  return {{ok, d}, max_err};
}

Outcome determinism() {
  bool ok = true;
  for (ProblemKind k : {ProblemKind::Scalar, ProblemKind::Maxwell}) {
    ExperimentConfig cfg;
    cfg.problem = k;
    cfg.cells_per_axis = {6, 6, 6};
    cfg.seed = 12345;
    std::string body[2];
    int iters[2];
    for (int rep = 0; rep < 2; ++rep) {
      const ExperimentResult r = run_experiment(cfg);
      std::ostringstream os;
      write_history_csv(os, cfg, r.report);
      body[rep] = os.str();
      iters[rep] = r.report.history.iterations;
    }
    ok = ok && body[0] == body[1] && iters[0] == iters[1];
  }
  return {ok, "scalar and maxwell, two runs each with seed 12345: CSV bytes and iteration counts compared"};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* title, const Outcome& o) {
    std::printf("criterion %2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  };
  auto guarded = [](const std::function<Outcome()>& f) -> Outcome {
    try {
      return f();
    } catch (const std::exception& e) {
      return {false, std::string("exception: ") + e.what()};
    }
  };

  report(1, "scalar Schur inverse", guarded([] { return identity_across("schur_inverse_scalar", kSmall, 5.0); }));
  report(2, "edge Schur inverse", guarded([] { return identity_across("schur_inverse_edge", kSmall, 10.0); }));
  report(3, "weighted pseudo-inverse identities", guarded(pseudoinverse_identities));
  report(4, "lift and restriction commute", guarded([] {
           return identity_across("lift_restriction_commute", {{k222, {2, 1, 1}}, {k222, k222}}, 0.0);
         }));
  report(5, "commutation lattice", guarded(commutation_lattice));
  report(6, "closed-form R†_D", guarded([] { return identity_across("pseudoinverse_RD_closed_form", kSmall, 0.0); }));
  report(7, "Q_NN exact for one subdomain", guarded(single_subdomain_pcg));
  report(8, "condition number bounds", guarded(condition_bounds));

  double scalar_err = -1.0, maxwell_err = -1.0;
  report(9, "scalar refinement table", guarded([&] {
           const TableOutcome t = table_check(ProblemKind::Scalar, 100, 1.35, 600.0, true);
           scalar_err = t.max_error;
           return t.table;
         }));
  report(10, "maxwell refinement table", guarded([&] {
           const TableOutcome t = table_check(ProblemKind::Maxwell, 150, 1.30, 1200.0, false);
           maxwell_err = t.max_error;
           return t.table;
         }));
  report(11, "manufactured solution error", guarded([&] {
           const double cap = 100 * 1e-9;
           const bool ok = scalar_err >= 0 && maxwell_err >= 0 && scalar_err <= cap && maxwell_err <= cap;
           return Outcome{ok, "max relative error scalar " + fmt("%.3e", scalar_err) + ", maxwell " +
                                  fmt("%.3e", maxwell_err) + " (cap 1e-7)"};
         }));
  report(12, "determinism", guarded(determinism));

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
