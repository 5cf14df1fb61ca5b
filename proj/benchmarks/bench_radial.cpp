#include <benchmark/benchmark.h>

#include "furthlab/radial.hpp"

using namespace furthlab;
namespace rad = furthlab::radial;

static void BM_HydrogenGroundState(benchmark::State& state) {
  rad::RadialProblem p;
  p.geometry = rad::Geometry::spherical;
  p.potential = PotentialSpec::coulomb(1.0);
  p.r_min = 1e-5;
  p.r_max = 45.0;
  p.n_points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto sol = rad::numerov_eigensolve(p, 0);
    benchmark::DoNotOptimize(sol.energy);
  }
}
BENCHMARK(BM_HydrogenGroundState)->Arg(2000)->Arg(6000);

static void BM_AngularMomentumOracle(benchmark::State& state) {
  const PhysicsConstants c;
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rep = rad::angular_momentum_oracle(l, l, c);
    benchmark::DoNotOptimize(rep.L2_total);
  }
}
BENCHMARK(BM_AngularMomentumOracle)->Arg(5)->Arg(20);

BENCHMARK_MAIN();
