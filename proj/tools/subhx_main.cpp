#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "subhx/experiment.hpp"

namespace {

int report_verify(const subhx::VerifyReport& report) {
  report.write_csv(std::cout);
  const bool ok = report.all_passed();
  std::printf("verify: %s (%zu identities)\n", ok ? "all passed" : "FAILED", report.checks.size());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Substructured Neumann-Neumann / Hiptmair-Xu experiments on a box mesh"};

  // Flags are captured as strings and applied after the config file so that
  // the command line wins.
  std::map<std::string, std::string> values;
  const char* keys[][2] = {
      {"problem", "scalar, maxwell or verify"},
      {"cells", "cells per axis NX,NY,NZ"},
      {"subdomains", "subdomain grid JX,JY,JZ"},
      {"alpha", "diffusion coefficient"},
      {"beta", "reaction coefficient"},
      {"gamma", "Maxwell mass coefficient (mass weight gamma^2)"},
      {"tol", "PCG tolerance on the preconditioned residual ratio"},
      {"max-iter", "PCG iteration cap"},
      {"seed", "seed of the manufactured solution"},
      {"out", "convergence history CSV"},
      {"summary", "summary CSV dim_skeleton,dim_volume,iters"},
      {"export-vtk", "write the mesh as legacy VTK"},
      {"report", "verify report CSV"},
  };
  std::map<std::string, CLI::Option*> opts;
  for (const auto& k : keys) opts[k[0]] = app.add_option(std::string("--") + k[0], values[k[0]], k[1]);

  std::string config_path;
  bool table = false;
  bool corrupt = false;
  app.add_option("--config", config_path, "key=value config file; flags override it");
  app.add_flag("--table", table, "run the refinement sequence 3,6,9,12 cells per axis");
  app.add_flag("--corrupt-gradient-sign", corrupt, "test hook: flip one skeleton gradient entry in verify");

  CLI11_PARSE(app, argc, argv);

  try {
    subhx::ExperimentConfig cfg;
    if (!config_path.empty()) cfg.load_file(config_path);
    if (opts["problem"]->count() > 0) cfg.set("problem", values["problem"]);
    if (cfg.problem == subhx::ProblemKind::Verify && config_path.empty()) {
      cfg.cells_per_axis = {2, 2, 2};
      cfg.subdomain_grid = {2, 2, 2};
    }
    for (const auto& k : keys)
      if (std::string(k[0]) != "problem" && opts[k[0]]->count() > 0) cfg.set(k[0], values[k[0]]);
    cfg.corrupt_gradient_sign = corrupt;
    cfg.validate();

    if (cfg.problem == subhx::ProblemKind::Verify) return report_verify(subhx::run_verify(cfg));

    for (const auto& [k, v] : cfg.entries()) std::printf("# %s=%s\n", k.c_str(), v.c_str());
    if (table) {
      const auto rows = subhx::run_table(cfg);
      std::printf("%-8s %12s %12s %6s %12s %9s\n", "cells", "dim_Sigma", "dim_Omega", "iters", "rel_err", "time[s]");
      bool ok = true;
      for (const auto& r : rows) {
        std::printf("%-8s %12lld %12lld %6d %12.3e %9.2f%s\n", subhx::to_string(r.cells).c_str(),
                    static_cast<long long>(r.dim_skeleton), static_cast<long long>(r.dim_volume), r.iterations,
                    r.relative_error, r.wall_seconds, r.converged ? "" : "  (not converged)");
        ok = ok && r.converged;
      }
      return ok ? 0 : 1;
    }
    const auto res = subhx::run_experiment(cfg);
    const auto& h = res.report.history;
    std::printf("dim_skeleton=%lld dim_volume=%lld iters=%d converged=%s relres=%.3e rel_err=%.3e time=%.2fs\n",
                static_cast<long long>(res.report.metadata.dim_skeleton),
                static_cast<long long>(res.report.metadata.dim_volume), h.iterations,
                h.converged ? "yes" : "no", h.relres.back(), res.relative_error, h.wall_seconds);
    return h.converged ? 0 : 1;
  } catch (const subhx::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const subhx::SolverBreakdown& e) {
    std::fprintf(stderr, "solver breakdown: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}
