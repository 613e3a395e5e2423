#include <benchmark/benchmark.h>

#include "brownq/reflection.hpp"
#include "brownq/samplers.hpp"

using namespace brownq;

namespace {

struct Pair {
  Path f, g;
};

Pair make_pair(std::size_t steps) {
  const TimeGrid grid{1.0 / static_cast<double>(steps), steps};
  return {sample_brownian(grid, 0.0, 1.0, 0.0, Seed{1}), sample_brownian(grid, 1.0, 1.0, -0.5, Seed{2})};
}

void BM_ReflectUnder(benchmark::State& state) {
  const Pair p = make_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reflect_under(p.f, p.g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ReflectUnder)->RangeMultiplier(8)->Range(64, 1 << 18);

void BM_BruteForceReflect(benchmark::State& state) {
  const Pair p = make_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_reflect(p.f, p.g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BruteForceReflect)->RangeMultiplier(4)->Range(64, 4096);

void BM_QueueOp(benchmark::State& state) {
  const Pair p = make_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(queue_op(p.f, p.g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QueueOp)->Arg(1000)->Arg(200000);

}  // namespace
