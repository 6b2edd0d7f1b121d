#include <benchmark/benchmark.h>

#include "areaflow/flow_solver.hpp"
#include "areaflow/initial_data.hpp"
#include "areaflow/variational.hpp"

using namespace areaflow;

static void BM_ProxDualRadius(benchmark::State& state) {
  UniformSource rng(1);
  std::vector<double> a(1024);
  for (double& x : a) x = rng.uniform(0.0, 5.0);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prox_dual_radius(a[k++ & 1023], 0.3));
  }
}
BENCHMARK(BM_ProxDualRadius);

static void BM_GradientDivergence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = build_grid(RectangleSpec{0.0, 1.0, 0.0, 1.0, n, n});
  const CellField u = random_uniform_field(g, 2);
  std::vector<double> p(g->face_count()), d(g->cell_count());
  for (auto _ : state) {
    forward_gradient(u.values(), *g, p);
    divergence(p, *g, d);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g->cell_count()));
}
BENCHMARK(BM_GradientDivergence)->Arg(64)->Arg(256);

static void BM_ImplicitStep1D(benchmark::State& state) {
  auto g = build_grid(IntervalSpec{0.0, 2.0, static_cast<int>(state.range(0))});
  const CellField u = quarter_circle_field(g, 1.0);
  SolverConfig cfg;
  for (auto _ : state) {
    const StepResult r = implicit_step(u, cfg);
    benchmark::DoNotOptimize(r.inner_iters);
  }
}
BENCHMARK(BM_ImplicitStep1D)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

static void BM_WarmStartedStep(benchmark::State& state) {
  auto g = build_grid(IntervalSpec{0.0, 2.0, 800});
  SolverConfig cfg;
  const StepResult first = implicit_step(quarter_circle_field(g, 2.0), cfg);
  const WarmStart warm = first.warm_start();
  for (auto _ : state) {
    const StepResult r = implicit_step(first.u_next, cfg, &warm);
    benchmark::DoNotOptimize(r.inner_iters);
  }
}
BENCHMARK(BM_WarmStartedStep)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
