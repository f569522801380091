#include <benchmark/benchmark.h>

#include "lpcocycle/group_ball.hpp"
#include "lpcocycle/measure_flow.hpp"

using namespace lpcocycle;

// mu_x(a) from scratch (empty caches) as d(x, a) grows along the ladder.
static void BM_MuLadder(benchmark::State& state) {
  const Space s = builtin_space(Builtin::ladder, 120);
  const MeasureFlow proto(s.metric, 1);
  const Vertex a = 2 * static_cast<Vertex>(state.range(0));
  for (auto _ : state) {
    MeasureFlow flow = proto.fresh();
    benchmark::DoNotOptimize(flow.mu(a, 1));
  }
}
BENCHMARK(BM_MuLadder)->RangeMultiplier(2)->Range(8, 64);

// All mu_x(a) for a fixed x over a free-group ball, sharing one cache.
static void BM_MuFreeBallRow(benchmark::State& state) {
  const GroupBall f = free_group_ball(2, static_cast<int>(state.range(0)));
  const auto as = f.inner_ball(static_cast<int>(state.range(0)));
  const MeasureFlow proto(f.metric(), 1);
  for (auto _ : state) {
    MeasureFlow flow = proto.fresh();
    for (Vertex a : as) benchmark::DoNotOptimize(flow.mu(a, 0));
  }
  state.counters["a"] = static_cast<double>(as.size());
}
BENCHMARK(BM_MuFreeBallRow)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

static void BM_StepT(benchmark::State& state) {
  const Space s = builtin_space(Builtin::cycle, 200);
  const AnnulusSchedule sched(static_cast<int>(state.range(0)));
  const auto mu = SparseProbMeasure::dirac(100);
  for (auto _ : state) benchmark::DoNotOptimize(step_T(s.metric, sched, 0, mu));
}
BENCHMARK(BM_StepT)->DenseRange(1, 3);
