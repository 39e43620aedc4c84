#include <benchmark/benchmark.h>

#include "levysir/analysis.hpp"
#include "levysir/montecarlo.hpp"
#include "levysir/sde.hpp"

namespace {

using namespace levysir;

constexpr EpidemicParams kParams{0.0073, 0.0033, 0.001, 0.01, 0.02};
constexpr SirState kStart{6.0, 1.0, 0.3};

void BM_StepJump(benchmark::State& state) {
  const JumpMeasure measure = JumpMeasure::single(0.001, 1.0);
  RandomStream rng(1, 0);
  SirState x = kStart;
  for (auto _ : state) {
    x = step_jump(x, kParams, measure, 0.1, rng).state;
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_StepJump);

void BM_StepDeterministic(benchmark::State& state) {
  SirState x = kStart;
  for (auto _ : state) {
    x = step_deterministic(x, kParams, 0.1).state;
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_StepDeterministic);

void BM_Simulate(benchmark::State& state) {
  const JumpMeasure measure = JumpMeasure::single(0.001, 1.0);
  const IntegratorConfig cfg{0.1, static_cast<double>(state.range(0)), 10, Scheme::jump_euler};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(kStart, kParams, measure, cfg, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.steps()));
}
BENCHMARK(BM_Simulate)->Arg(600)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_RunEnsemble(benchmark::State& state) {
  Scenario sc;
  sc.params = kParams;
  sc.initial = kStart;
  sc.measure = JumpMeasure::single(calibrate_amplitude(kParams, 1.0, -9.0e-4), 1.0);
  sc.integrator = {0.1, 600.0, 10, Scheme::jump_euler};
  const auto threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_ensemble(sc, static_cast<std::size_t>(state.range(0)), 2021, {threads}));
  }
}
BENCHMARK(BM_RunEnsemble)->Args({100, 1})->Args({1000, 1})->Args({1000, 0})
    ->Unit(benchmark::kMillisecond);

void BM_Thresholds(benchmark::State& state) {
  const JumpMeasure measure({{0.001, 1.0}, {0.002, 0.5}, {-0.001, 0.25}});
  for (auto _ : state) benchmark::DoNotOptimize(thresholds(kParams, measure, 9.0e-4));
}
BENCHMARK(BM_Thresholds);

}  // namespace
BENCHMARK_MAIN();
