#include <benchmark/benchmark.h>

#include "subhx/problem.hpp"

using namespace subhx;

namespace {

Grid3 cube(const benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  return {n, n, n};
}

const Grid3 kSubs{3, 3, 3};

void BM_AssembleEdge(benchmark::State& st) {
  const auto d = build_discretization(cube(st), kSubs);
  const auto c = Coefficients::uniform(d.mesh, 1, 1, 1);
  for (auto _ : st) benchmark::DoNotOptimize(assemble_edge(d.mesh, d.spaces, c, Scope::PerSubdomain));
  st.counters["edges"] = static_cast<double>(d.mesh.num_edges());
}

void BM_ScalarSchurApply(benchmark::State& st) {
  const auto d = build_discretization(cube(st), kSubs);
  const auto sc = build_scalar(d, Coefficients::uniform(d.mesh, 1, 1, 1));
  const Vector u = Vector::Ones(sc.schur->skeleton_dim());
  for (auto _ : st) benchmark::DoNotOptimize(sc.schur->apply(u));
}

void BM_ApplyQnn(benchmark::State& st) {
  const auto d = build_discretization(cube(st), kSubs);
  const auto sc = build_scalar(d, Coefficients::uniform(d.mesh, 1, 1, 1));
  const Vector f = Vector::Ones(sc.qnn->dim());
  for (auto _ : st) benchmark::DoNotOptimize(sc.qnn->apply(f));
}

void BM_ApplyQhx(benchmark::State& st) {
  const auto d = build_discretization(cube(st), kSubs);
  const auto mx = build_maxwell(d, Coefficients::uniform(d.mesh, 1, 1, 1));
  const Vector f = Vector::Ones(mx.qhx->dim());
  for (auto _ : st) benchmark::DoNotOptimize(mx.qhx->apply(f));
}

void BM_BuildMaxwell(benchmark::State& st) {
  const auto d = build_discretization(cube(st), kSubs);
  const auto c = Coefficients::uniform(d.mesh, 1, 1, 1);
  for (auto _ : st) benchmark::DoNotOptimize(build_maxwell(d, c));
}

}  // namespace

BENCHMARK(BM_AssembleEdge)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScalarSchurApply)->Arg(6)->Arg(12)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ApplyQnn)->Arg(6)->Arg(12)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ApplyQhx)->Arg(6)->Arg(12)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BuildMaxwell)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
