#include <stripbie/boundary.hpp>
#include <stripbie/conformal.hpp>
#include <stripbie/operators.hpp>
#include <stripbie/potential.hpp>
#include <stripbie/rhp.hpp>
#include <stripbie/solver.hpp>

#include <benchmark/benchmark.h>

#include <vector>

using namespace stripbie;

namespace {

void BM_Matvec(benchmark::State& state) {
  const auto scene = paper_example(ExampleId::Ex2, {.r = 0.09});
  const auto b = discretize(scene, static_cast<std::size_t>(state.range(0)));
  const auto rhp = build_rhp(b, scene);
  const KernelOperators ops(b, rhp);
  std::vector<double> x(b.nodes(), 1.0), y(b.nodes());
  for (auto _ : state) {
    ops.apply_N(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["nodes"] = static_cast<double>(b.nodes());
  state.SetItemsProcessed(state.iterations() * static_cast<long>(b.nodes() * b.nodes()));
}
BENCHMARK(BM_Matvec)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_SolveEx1(benchmark::State& state) {
  const auto scene = paper_example(ExampleId::Ex1CaseI, {.r = 0.1});
  const DiscretizeOptions d{static_cast<std::size_t>(state.range(0)), 0};
  for (auto _ : state) {
    auto s = solve(scene, d);
    benchmark::DoNotOptimize(s.result.mu.data());
  }
}
BENCHMARK(BM_SolveEx1)->RangeMultiplier(2)->Range(128, 2048)->Unit(benchmark::kMillisecond);

void BM_SolveRandom(benchmark::State& state) {
  auto spec = random_circles_spec(100, 100, 0.0075, 1);
  spec.wall_gap = 0.05;
  const auto scene = random_scene(spec);
  const DiscretizeOptions d{static_cast<std::size_t>(state.range(0)), 1024};
  for (auto _ : state) {
    auto s = solve(scene, d);
    benchmark::DoNotOptimize(s.result.mu.data());
  }
}
BENCHMARK(BM_SolveRandom)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_CauchyEval(benchmark::State& state) {
  const auto s = solve(paper_example(ExampleId::Ex1CaseI, {.r = 0.1}), {static_cast<std::size_t>(state.range(0)), 0});
  const FieldEvaluator ev(s);
  const cplx zeta = strip_to_disk({0.2, 0.25});
  for (auto _ : state) benchmark::DoNotOptimize(ev.analytic(zeta));
  state.counters["nodes"] = static_cast<double>(s.boundary.nodes());
}
BENCHMARK(BM_CauchyEval)->RangeMultiplier(4)->Range(128, 2048);

void BM_FieldGrid(benchmark::State& state) {
  const auto s = solve(paper_example(ExampleId::Ex1CaseI, {.r = 0.1}), {512, 0});
  const GridSpec spec{.nx = 121, .ny = 67};
  for (auto _ : state) {
    auto g = evaluate_grid(s, spec);
    benchmark::DoNotOptimize(g.T.data());
  }
}
BENCHMARK(BM_FieldGrid)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
