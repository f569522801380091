#include <benchmark/benchmark.h>

#include "lpcocycle/group_ball.hpp"
#include "lpcocycle/hyperbolicity.hpp"

using namespace lpcocycle;

static void BM_FourPointDeltaCycle(benchmark::State& state) {
  const Space s = builtin_space(Builtin::cycle, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(four_point_delta(s.metric));
}
BENCHMARK(BM_FourPointDeltaCycle)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

static void BM_FourPointDeltaLadder(benchmark::State& state) {
  const Space s = builtin_space(Builtin::ladder, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(four_point_delta(s.metric));
}
BENCHMARK(BM_FourPointDeltaLadder)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

static void BM_SupportBoundC(benchmark::State& state) {
  const GroupBall f = free_group_ball(2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(support_bound_C(f.metric(), static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SupportBoundC)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);
