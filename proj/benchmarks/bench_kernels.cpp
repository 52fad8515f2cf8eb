#include <benchmark/benchmark.h>

#include "deepwave/experiments.hpp"

using namespace deepwave;

namespace {

Scenario scenario(std::size_t n) {
  const Grid g(30.0, n);
  return Scenario{PhysicalParams{0.1, 1.0, 0.5}, make_bathymetry("bump_cos", g),
                  make_initial("sech_pulse", g), 1.0};
}

void BM_HMu(benchmark::State& state) {
  const Scenario s = scenario(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(apply_h_mu(s.initial.zeta, 1.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HMu)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNLogN);

void BM_DispersiveRhs(benchmark::State& state) {
  const Scenario s = scenario(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dispersive_rhs(s.initial, s.params, s.bathymetry));
}
BENCHMARK(BM_DispersiveRhs)->RangeMultiplier(4)->Range(256, 16384);

void BM_TransportStep(benchmark::State& state) {
  const Scenario s = scenario(static_cast<std::size_t>(state.range(0)));
  const double dt = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(transport_step(s.initial, s.params, dt));
}
BENCHMARK(BM_TransportStep)->RangeMultiplier(4)->Range(256, 16384);

void BM_LieStep(benchmark::State& state) {
  const Scenario s = scenario(static_cast<std::size_t>(state.range(0)));
  const double dt = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(lie_step(s.initial, s.params, s.bathymetry, dt));
}
BENCHMARK(BM_LieStep)->RangeMultiplier(4)->Range(256, 16384);

}  // namespace

BENCHMARK_MAIN();
