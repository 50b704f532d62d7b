#include <benchmark/benchmark.h>

#include "udg/cutgeom.hpp"
#include "udg/scheme.hpp"

namespace {

using namespace udg;

LevelSetField const kField(ShrinkingCircle{{0, 0}, 1.0, 1.0});

DiscreteLevelSet levels(int n) {
  return interpolate(kField, CartesianGrid({-1.5, -1.5}, {3.5, 3.0}, n, n), 0.5, 0.0);
}

void BM_BuildDomain(benchmark::State &state) {
  auto const dls = levels(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_domain(dls));
}
BENCHMARK(BM_BuildDomain)->Arg(40)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State &state) {
  auto const dls = levels(static_cast<int>(state.range(0)));
  auto const dom = build_domain(dls);
  DGSpace const space(dom, 0);
  auto const params = make_params(dom, 0.5);
  VelocityWeight const weight(dls, kField, VelocityMode::analytic_normal);
  auto const u_old = constant_profile(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(dom, space, params, u_old, weight));
}
BENCHMARK(BM_Assemble)->Arg(40)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State &state) {
  auto const dls = levels(static_cast<int>(state.range(0)));
  auto const dom = build_domain(dls);
  DGSpace const space(dom, 0);
  auto const params = make_params(dom, 0.5);
  VelocityWeight const weight(dls, kField, VelocityMode::analytic_normal);
  auto const sys = assemble(dom, space, params, constant_profile(1.0), weight);
  StepSolverOptions opts;
  opts.method = state.range(1) == 0 ? StepSolverOptions::Method::direct : StepSolverOptions::Method::iterative;
  for (auto _ : state) benchmark::DoNotOptimize(solve_system(sys, 0.0, opts));
  state.counters["dofs"] = static_cast<double>(sys.dof_count());
}
BENCHMARK(BM_Solve)->Args({40, 0})->Args({40, 1})->Args({160, 1})->Args({320, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
