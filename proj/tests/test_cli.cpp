#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "subhx/experiment.hpp"
#include "subhx/io.hpp"
#include "subhx/mesh.hpp"

using namespace subhx;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "subhx_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Config, ParseGridAndProblem) {
  EXPECT_EQ(parse_grid("3,4,5"), (Grid3{3, 4, 5}));
  EXPECT_THROW(parse_grid("3,4"), ConfigError);
  EXPECT_THROW(parse_grid("3,x,4"), ConfigError);
  EXPECT_EQ(parse_problem("maxwell"), ProblemKind::Maxwell);
  EXPECT_THROW(parse_problem("heat"), ConfigError);
}

TEST(Config, ValidationMessages) {
  ExperimentConfig c;
  c.tol = 1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c.tol = 1e-9;
  c.gamma = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c.gamma = 1.0;
  c.cells_per_axis = {4, 4, 4};
  EXPECT_THROW(run_experiment(c), ConfigError);  // 3 does not divide 4
  EXPECT_THROW(c.set("colour", "red"), ConfigError);
  EXPECT_THROW(c.set("alpha", "1.0x"), ConfigError);
}

TEST(Config, FileThenOverrides) {
  const fs::path p = scratch("cfg.txt");
  {
    std::ofstream out(p);
    out << "# comment\nproblem = maxwell\ncells=6,6,6\nalpha=2.5  # trailing\nseed=77\n";
  }
  ExperimentConfig c;
  c.load_file(p.string());
  EXPECT_EQ(c.problem, ProblemKind::Maxwell);
  EXPECT_EQ(c.alpha, 2.5);
  EXPECT_EQ(c.seed, 77u);
  c.set("alpha", "3");
  EXPECT_EQ(c.alpha, 3.0);
  EXPECT_THROW(c.load_file((p.parent_path() / "missing.txt").string()), ConfigError);
}

TEST(Experiment, SingleSubdomainScalarIsExact) {
  ExperimentConfig c;
  c.cells_per_axis = {4, 4, 4};
  c.subdomain_grid = {1, 1, 1};
  const auto r = run_experiment(c);
  EXPECT_TRUE(r.report.history.converged);
  EXPECT_LE(r.report.history.iterations, 2);
}

TEST(Experiment, CsvHeaderAndDeterminism) {
  ExperimentConfig c;
  c.problem = ProblemKind::Maxwell;
  c.cells_per_axis = {6, 6, 6};
  c.out_path = scratch("a.csv").string();
  c.summary_path = scratch("a_sum.csv").string();
  const auto r1 = run_experiment(c);
  const std::string first = slurp(c.out_path);
  c.out_path = scratch("b.csv").string();
  const auto r2 = run_experiment(c);
  EXPECT_EQ(first, slurp(c.out_path));
  EXPECT_EQ(r1.report.history.iterations, r2.report.history.iterations);
  EXPECT_NE(first.find("# seed=1\n"), std::string::npos);
  EXPECT_NE(first.find("# stopping_criterion="), std::string::npos);
  EXPECT_NE(first.find("\niter,relres\n0,1\n"), std::string::npos);
  const std::string summary = slurp(c.summary_path);
  EXPECT_EQ(summary.rfind("dim_skeleton,dim_volume,iters\n", 0), 0u);
  EXPECT_LE(r1.relative_error, 100 * c.tol);
}

TEST(Experiment, SeedChangesRhsNotDims) {
  ExperimentConfig c;
  c.cells_per_axis = {6, 6, 6};
  const auto a = run_experiment(c);
  c.seed = 2;
  const auto b = run_experiment(c);
  EXPECT_EQ(a.report.metadata.dim_skeleton, b.report.metadata.dim_skeleton);
  EXPECT_NE(a.report.solution, b.report.solution);
}

TEST(Verify, ReportFileAndStatus) {
  ExperimentConfig c;
  c.problem = ProblemKind::Verify;
  c.cells_per_axis = {2, 2, 2};
  c.subdomain_grid = {2, 2, 2};
  c.report_path = scratch("verify.csv").string();
  EXPECT_TRUE(run_verify(c).all_passed());
  const std::string rep = slurp(c.report_path);
  EXPECT_EQ(rep.rfind("identity,mesh,residual,tolerance,status\n", 0), 0u);
  EXPECT_EQ(rep.find("FAIL"), std::string::npos);
  c.corrupt_gradient_sign = true;
  EXPECT_FALSE(run_verify(c).all_passed());
}

TEST(Io, VtkAndMatrixMarket) {
  const BoxMesh m = build_box_mesh({1, 1, 1}, {1, 1, 1});
  std::ostringstream vtk;
  write_vtk(vtk, m);
  const std::string s = vtk.str();
  EXPECT_NE(s.find("POINTS 8 double"), std::string::npos);
  EXPECT_NE(s.find("CELLS 6 30"), std::string::npos);
  EXPECT_NE(s.find("CELL_TYPES 6\n10\n"), std::string::npos);

  SparseMatrix a(2, 3);
  a.insert(1, 2) = 0.5;
  std::ostringstream mm;
  write_matrix_market(mm, a);
  EXPECT_EQ(mm.str(), "%%MatrixMarket matrix coordinate real general\n2 3 1\n2 3 0.5\n");
}
