#include <benchmark/benchmark.h>

#include "furthlab/paths.hpp"

using namespace furthlab;

static void BM_SampleWienerEnsemble(benchmark::State& state) {
  const auto n_paths = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto ens = paths::sample_wiener_ensemble(n_paths, 500, 0.01, 0.5, 0.0, 42);
    benchmark::DoNotOptimize(ens.paths.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 500);
}
BENCHMARK(BM_SampleWienerEnsemble)->Arg(50)->Arg(200);

static void BM_KineticEstimators(benchmark::State& state) {
  const auto ens = paths::sample_wiener_ensemble(200, 500, 0.01, 0.5, 1.0, 42);
  for (auto _ : state) {
    auto est = paths::kinetic_energy_estimators(ens);
    benchmark::DoNotOptimize(est.naive.estimate);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(ens.n_increments()));
}
BENCHMARK(BM_KineticEstimators);

BENCHMARK_MAIN();
