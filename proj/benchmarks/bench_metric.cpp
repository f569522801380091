#include <benchmark/benchmark.h>

#include "lpcocycle/group_ball.hpp"

using namespace lpcocycle;

static void BM_AllPairsLadder(benchmark::State& state) {
  const Space s = builtin_space(Builtin::ladder, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs(*s.graph));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(s.size()));
}
BENCHMARK(BM_AllPairsLadder)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

static void BM_AllPairsFreeBall(benchmark::State& state) {
  const GroupBall f = free_group_ball(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(all_pairs(*f.space().graph));
  state.counters["vertices"] = static_cast<double>(f.space().size());
}
BENCHMARK(BM_AllPairsFreeBall)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

static void BM_FreeGroupBall(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(free_group_ball(2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FreeGroupBall)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
