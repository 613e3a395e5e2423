#include <benchmark/benchmark.h>

#include "brownq/heavytraffic.hpp"
#include "brownq/reflection.hpp"
#include "brownq/samplers.hpp"
#include "brownq/tandem.hpp"

using namespace brownq;

namespace {

void BM_SampleBrownian(benchmark::State& state) {
  const TimeGrid grid{1e-3, static_cast<std::size_t>(state.range(0))};
  std::uint64_t s = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_brownian(grid, 0.0, 1.0, 0.0, Seed{++s}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleBrownian)->Arg(1000)->Arg(100000);

// One station of the tandem recursion at dt = 1e-3, T = 1.
void BM_TandemStation(benchmark::State& state) {
  const TimeGrid grid = make_grid(1e-3, 1.0);
  const Path arrival = sample_brownian(grid, 0.0, 1.0, 0.0, Seed{3});
  std::size_t n = 0;
  for (auto _ : state) {
    const ServiceRealization s = make_service(++n, 1.0, grid, 0.0, Seed{4});
    benchmark::DoNotOptimize(reflect_under(arrival, s.service_path));
  }
}
BENCHMARK(BM_TandemStation);

void BM_TandemChain(benchmark::State& state) {
  TandemConfig cfg;
  cfg.n_stations = static_cast<std::size_t>(state.range(0));
  std::size_t r = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_tandem(cfg, r++));
}
BENCHMARK(BM_TandemChain)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ScaledDeparture(benchmark::State& state) {
  HeavyTrafficConfig cfg;
  cfg.n = static_cast<std::uint64_t>(state.range(0));
  std::size_t r = 0;
  for (auto _ : state) benchmark::DoNotOptimize(scaled_departure(cfg, r++));
}
BENCHMARK(BM_ScaledDeparture)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
