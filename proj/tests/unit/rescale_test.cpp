#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "lpcocycle/group_ball.hpp"
#include "lpcocycle/hyperbolicity.hpp"
#include "lpcocycle/measure_suites.hpp"
#include "lpcocycle/rescale.hpp"
#include "oracles.hpp"

using namespace lpcocycle;
using namespace lpcocycle::testing;

namespace {

MetricTable scaled(const MetricTable& m, int factor) {
  const std::size_t n = m.size();
  std::vector<int> v(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) v[x * n + y] = factor * m(static_cast<Vertex>(x), static_cast<Vertex>(y));
  return MetricTable::from_values(n, v);
}

Matrix to_matrix(const MetricTable& m) {
  Matrix d(m.size(), std::vector<int>(m.size()));
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y) d[x][y] = m(static_cast<Vertex>(x), static_cast<Vertex>(y));
  return d;
}

MetricTable path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return all_pairs(build_graph(e));
}

}  // namespace

TEST(ChainMetric, GraphMetricWithDeltaZeroIsIdentity) {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 10; ++trial) {
    const MetricTable m = all_pairs(random_connected_graph(25, 20, rng));
    const ChainRescaling r = chain_metric(m, 0);
    for (Vertex x = 0; x < 25; ++x)
      for (Vertex y = 0; y < 25; ++y) ASSERT_EQ(r.chain(x, y), m(x, y));
  }
}

TEST(ChainMetric, PathWithStepTwo) {
  const ChainRescaling r = chain_metric(path(7), 1);
  EXPECT_EQ(r.chain(0, 6), 3);
  EXPECT_EQ(r.chain.eccentricity(0), 3);
}

TEST(ChainMetric, TwoPointsTooFarApart) {
  const std::vector<int> v{0, 5, 5, 0};
  try {
    chain_metric(MetricTable::from_values(2, v), 1);
    FAIL() << "expected ChainDisconnected";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::chain_disconnected);
    EXPECT_NE(std::string(e.what()).find("points 0 and 1"), std::string::npos) << e.what();
  }
}

TEST(ChainMetric, MatchesFloydWarshallOnScaledMetrics) {
  std::mt19937_64 rng(92);
  for (int trial = 0; trial < 10; ++trial) {
    const MetricTable base = all_pairs(random_connected_graph(20, 10, rng));
    for (int factor : {2, 3}) {
      const MetricTable m = scaled(base, factor);
      const int delta = factor - 1;
      const ChainRescaling r = chain_metric(m, delta);
      const Matrix oracle = chain_oracle(to_matrix(m), delta + 1);
      for (Vertex x = 0; x < 20; ++x)
        for (Vertex y = 0; y < 20; ++y) ASSERT_EQ(r.chain(x, y), oracle[x][y]);
    }
  }
}

TEST(Prop51, Examples) {
  const Prop51Report g = verify_prop_5_1(chain_metric(builtin_space("cycle:6").metric, 0));
  EXPECT_TRUE(g.passed());
  EXPECT_TRUE(g.lower_asserted);
  EXPECT_EQ(g.max_excess, 0);

  const Prop51Report p7 = verify_prop_5_1(chain_metric(path(7), 1));
  EXPECT_TRUE(p7.passed());
  EXPECT_DOUBLE_EQ(p7.max_ratio, 2.0);

  const Prop51Report c6 = verify_prop_5_1(chain_metric(builtin_space("cycle:6").metric, 2));
  EXPECT_TRUE(c6.passed());
  EXPECT_EQ(c6.pairs, 36u);
}

TEST(Prop51, ScaledGraphMetrics) {
  for (const char* spec : {"line:10", "cycle:8", "ladder:12", "tree:3:3"}) {
    const MetricTable m = scaled(builtin_space(spec).metric, 3);
    ASSERT_TRUE(weakly_geodesic_check(m, 2).ok) << spec;
    const Prop51Report r = verify_prop_5_1(chain_metric(m, 2));
    EXPECT_TRUE(r.lower_asserted);
    EXPECT_TRUE(r.passed()) << spec;
    EXPECT_LE(r.max_ratio, 3.0);
  }
}

TEST(Prop51, LowerBoundNotAssertedWithoutWeakGeodesicity) {
  // A path 0-1-2-3 whose ends are shortcut to distance 2: steps of length 1
  // still chain it, but no point splits (0, 3) at s = 1.
  const std::vector<int> v{0, 1, 2, 2,  //
                           1, 0, 1, 2,  //
                           2, 1, 0, 1,  //
                           2, 2, 1, 0};
  const MetricTable m = MetricTable::from_values(4, v);
  EXPECT_TRUE(check_metric_axioms(m).passed());
  const Prop51Report rep = verify_prop_5_1(chain_metric(m, 0));
  EXPECT_FALSE(rep.weak.ok);
  EXPECT_EQ(rep.weak.s, 1);
  EXPECT_FALSE(rep.lower_asserted);
  EXPECT_EQ(rep.upper_violations, 0u);
  EXPECT_TRUE(rep.passed());
}

TEST(Prop51, RescaledSpaceIsHyperbolicAndPassesSuites) {
  const MetricTable m = scaled(builtin_space("ladder:12").metric, 3);
  const ChainRescaling r = chain_metric(m, 2);
  const HyperbolicityReport h = hyperbolicity_report(r.chain);
  const auto all = all_vertices(r.chain.size());
  EXPECT_TRUE(suite_lemma_3_3(r.chain, all, h.delta_use, 4 * h.delta_use).passed());
  EXPECT_TRUE(suite_lemma_3_5(r.chain, all, 4 * h.delta_use).passed());
  const MeasureFlow flow(r.chain, h.delta_use);
  EXPECT_TRUE(suite_support(flow, all).passed());
  EXPECT_TRUE(suite_lemma_4_7(flow, all, h.C).passed());
}

TEST(Pipeline, GraphSourceWithDeltaZeroMatchesDirectRun) {
  const Space t = builtin_space("tree:3:4");
  const PipelineReport p = pipeline_theorem_5_2(t.metric, 0);
  EXPECT_EQ(p.rescaled.delta_use, 1);
  EXPECT_EQ(p.R, 4);
  EXPECT_EQ(p.source_radius, 4);
  EXPECT_TRUE(p.support.passed());
  EXPECT_EQ(p.support.checked, t.size() * t.size());
  EXPECT_LE(p.max_support_radius, 4);
}

TEST(Pipeline, PathWithStepTwoGivesDiracs) {
  const PipelineReport p = pipeline_theorem_5_2(path(7), 1);
  const ChainRescaling r = chain_metric(path(7), 1);
  EXPECT_EQ(r.chain.eccentricity(0), 3);
  EXPECT_TRUE(p.support.passed());
  // Diameter 3 < 4 delta', so every mu_x(a) = delta_x and the support radius is d(a, x).
  EXPECT_EQ(p.max_support_radius, 6);
}

TEST(Pipeline, SubdividedTreeWithDeltaTwo) {
  const Space s = subdivided_tree(3, 3, 3);
  const PipelineReport p = pipeline_theorem_5_2(s.metric, 2);
  EXPECT_TRUE(p.support.passed());
  EXPECT_EQ(p.source_radius, 3 * p.R);
  EXPECT_LE(p.max_support_radius, p.source_radius);
}
