#include <benchmark/benchmark.h>

#include "furthlab/kernels.hpp"

using namespace furthlab;
namespace ker = furthlab::kernels;

static void BM_HeatKernelTable(benchmark::State& state) {
  const Grid1D g = Grid1D::centered(15.0, static_cast<std::size_t>(state.range(0)));
  const PhysicsConstants c;
  for (auto _ : state) {
    auto table = ker::direct_kernel_table(ker::KernelKind::heat, 1.0, g, 0.0, c);
    benchmark::DoNotOptimize(table.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HeatKernelTable)->Arg(1 << 10)->Arg(1 << 14);

static void BM_ChapmanKolmogorovQuantum(benchmark::State& state) {
  const Grid1D g = Grid1D::centered(15.0, 601);
  const PhysicsConstants c;
  const double damping = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ker::chapman_kolmogorov_residual(ker::KernelKind::quantum, 1.0, 0.5, g, damping, c));
  }
}
BENCHMARK(BM_ChapmanKolmogorovQuantum)->Arg(100)->Arg(1000);

static void BM_PropagateDensity(benchmark::State& state) {
  const Grid1D g = Grid1D::centered(18.0, static_cast<std::size_t>(state.range(0)));
  const auto w0 = gaussian_density(g, 0.0, 1.0);
  for (auto _ : state) {
    auto out = ker::propagate_density(w0, 1.0, 0.5);
    benchmark::DoNotOptimize(out.density.values.data());
  }
}
BENCHMARK(BM_PropagateDensity)->Arg(601)->Arg(1801);

BENCHMARK_MAIN();
