#include "subhx/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "subhx/io.hpp"
#include "subhx/problem.hpp"

namespace subhx {

const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Scalar: return "scalar";
    case ProblemKind::Maxwell: return "maxwell";
    case ProblemKind::Verify: return "verify";
  }
  return "?";
}

ProblemKind parse_problem(const std::string& name) {
  if (name == "scalar") return ProblemKind::Scalar;
  if (name == "maxwell") return ProblemKind::Maxwell;
  if (name == "verify") return ProblemKind::Verify;
  throw ConfigError("unknown problem '" + name + "' (expected scalar, maxwell or verify)");
}

Grid3 parse_grid(const std::string& text) {
  int v[3] = {0, 0, 0};
  std::stringstream ss(text);
  std::string item;
  int n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == 3) throw ConfigError("grid '" + text + "' has more than three components");
    try {
      std::size_t used = 0;
      v[n] = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("grid component '" + item + "' in '" + text + "' is not an integer");
    }
    ++n;
  }
  if (n != 3) throw ConfigError("grid '" + text + "' must have the form NX,NY,NZ");
  return {v[0], v[1], v[2]};
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + value + "' is not a number");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long i = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return i;
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + value + "' is not an integer");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
  for (int a = 0; a < 3; ++a) {
    if (cells_per_axis[a] < 1) throw ConfigError("cells: every axis needs at least one cell");
    if (subdomain_grid[a] < 1) throw ConfigError("subdomains: every axis needs at least one subdomain");
  }
  if (!(alpha > 0.0)) throw ConfigError("alpha must be strictly positive");
  if (!(beta > 0.0)) throw ConfigError("beta must be strictly positive");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be strictly positive");
  if (!(tol > 0.0 && tol < 1.0)) throw ConfigError("tol must lie in (0, 1)");
  if (max_iter < 1) throw ConfigError("max-iter must be at least 1");
  // Divisibility is checked by the mesh builder, which names the axis.
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "problem") problem = parse_problem(value);
  else if (key == "cells") cells_per_axis = parse_grid(value);
  else if (key == "subdomains") subdomain_grid = parse_grid(value);
  else if (key == "alpha") alpha = parse_double(key, value);
  else if (key == "beta") beta = parse_double(key, value);
  else if (key == "gamma") gamma = parse_double(key, value);
  else if (key == "tol") tol = parse_double(key, value);
  else if (key == "max-iter") max_iter = static_cast<int>(parse_int(key, value));
  else if (key == "seed") seed = static_cast<std::uint64_t>(parse_int(key, value));
  else if (key == "out") out_path = value;
  else if (key == "summary") summary_path = value;
  else if (key == "export-vtk") vtk_path = value;
  else if (key == "report") report_path = value;
  else throw ConfigError("unknown config key '" + key + "'");
}

void ExperimentConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
  return {{"problem", to_string(problem)},
          {"cells", to_string(cells_per_axis)},
          {"subdomains", to_string(subdomain_grid)},
          {"alpha", g17(alpha)},
          {"beta", g17(beta)},
          {"gamma", g17(gamma)},
          {"tol", g17(tol)},
          {"max-iter", std::to_string(max_iter)},
          {"seed", std::to_string(seed)}};
}

void write_history_csv(std::ostream& os, const ExperimentConfig& config, const SolveReport& report) {
  for (const auto& [k, v] : config.entries()) os << "# " << k << '=' << v << '\n';
  os << "# stopping_criterion=" << kStoppingCriterion << '\n';
  os << "# dim_skeleton=" << report.metadata.dim_skeleton << '\n';
  os << "# dim_volume=" << report.metadata.dim_volume << '\n';
  os << "# iterations=" << report.history.iterations << '\n';
  os << "# converged=" << (report.history.converged ? "true" : "false") << '\n';
  os << "iter,relres\n";
  for (std::size_t k = 0; k < report.history.relres.size(); ++k) os << k << ',' << g17(report.history.relres[k]) << '\n';
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.problem == ProblemKind::Verify) throw ConfigError("run_experiment: use run_verify for problem=verify");

  const Discretization disc = build_discretization(config.cells_per_axis, config.subdomain_grid);
  if (!config.vtk_path.empty()) write_vtk(config.vtk_path, disc.mesh);
  const Coefficients coeffs = Coefficients::uniform(disc.mesh, config.alpha, config.beta, config.gamma);

  LinearOperator op;
  LinearOperator prec;
  Index dim_skeleton = 0;
  Index dim_volume = 0;
  // Keep whichever problem is built alive for the solve.
  std::shared_ptr<const void> keep;
  if (config.problem == ProblemKind::Scalar) {
    auto sc = std::make_shared<ScalarSubstructure>(build_scalar(disc, coeffs));
    op = sc->schur->as_operator();
    auto qnn = sc->qnn;
    prec = [qnn](const Vector& f) { return qnn->apply(f); };
    dim_skeleton = disc.spaces.scalar.skeleton.dim;
    dim_volume = disc.spaces.scalar.volume.dim;
    keep = sc;
  } else {
    auto mx = std::make_shared<MaxwellSubstructure>(build_maxwell(disc, coeffs));
    op = mx->schur->as_operator();
    auto qhx = mx->qhx;
    prec = [qhx](const Vector& f) { return qhx->apply(f); };
    dim_skeleton = disc.spaces.edge.skeleton.dim;
    dim_volume = disc.spaces.edge.volume.dim;
    keep = mx;
  }

  SplitMix64 rng(config.seed);
  const Vector u_ex = random_uniform_vector(dim_skeleton, rng);
  const Vector f = op(u_ex);

  PcgOptions opts;
  opts.tol = config.tol;
  opts.max_iter = config.max_iter;
  ExperimentResult res;
  res.report = pcg(op, prec, f, opts);
  res.report.metadata = {to_string(config.problem), dim_skeleton,  dim_volume,   config.cells_per_axis,
                         config.subdomain_grid,     config.alpha,  config.beta,  config.gamma,
                         config.seed};
  res.relative_error = (res.report.solution - u_ex).norm() / u_ex.norm();

  if (!config.out_path.empty()) {
    std::ofstream os(config.out_path);
    if (!os) throw ConfigError("cannot open '" + config.out_path + "' for writing");
    write_history_csv(os, config, res.report);
  }
  if (!config.summary_path.empty()) {
    std::ofstream os(config.summary_path);
    if (!os) throw ConfigError("cannot open '" + config.summary_path + "' for writing");
    write_summary(os, {TableRow{config.cells_per_axis, dim_skeleton, dim_volume, res.report.history.iterations,
                                res.report.history.converged, res.relative_error,
                                res.report.history.wall_seconds}});
  }
  return res;
}

void write_summary(std::ostream& os, const std::vector<TableRow>& rows) {
  os << "dim_skeleton,dim_volume,iters\n";
  for (const auto& r : rows) os << r.dim_skeleton << ',' << r.dim_volume << ',' << r.iterations << '\n';
}

namespace {

std::string with_suffix(const std::string& path, int cells) {
  if (path.empty()) return path;
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  const std::string tag = "_c" + std::to_string(cells);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

}  // namespace

std::vector<TableRow> run_table(const ExperimentConfig& config) {
  std::vector<TableRow> rows;
  for (int n : kTableCells) {
    ExperimentConfig c = config;
    c.cells_per_axis = {n, n, n};
    c.out_path = with_suffix(config.out_path, n);
    c.summary_path.clear();
    c.vtk_path.clear();
    const ExperimentResult r = run_experiment(c);
    rows.push_back({c.cells_per_axis, r.report.metadata.dim_skeleton, r.report.metadata.dim_volume,
                    r.report.history.iterations, r.report.history.converged, r.relative_error,
                    r.report.history.wall_seconds});
  }
  if (!config.summary_path.empty()) {
    std::ofstream os(config.summary_path);
    if (!os) throw ConfigError("cannot open '" + config.summary_path + "' for writing");
    write_summary(os, rows);
  }
  return rows;
}

VerifyReport run_verify(const ExperimentConfig& config) {
  config.validate();
  VerifyOptions opt;
  opt.cells_per_axis = config.cells_per_axis;
  opt.subdomain_grid = config.subdomain_grid;
  opt.alpha = config.alpha;
  opt.beta = config.beta;
  opt.gamma = config.gamma;
  opt.corrupt_gradient_sign = config.corrupt_gradient_sign;
  VerifyReport report = verify_identities(opt);
  if (!config.report_path.empty()) {
    std::ofstream os(config.report_path);
    if (!os) throw ConfigError("cannot open '" + config.report_path + "' for writing");
    report.write_csv(os);
  }
  return report;
}

}  // namespace subhx
