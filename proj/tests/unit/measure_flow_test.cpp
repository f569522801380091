#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "lpcocycle/group_ball.hpp"
#include "lpcocycle/hyperbolicity.hpp"
#include "lpcocycle/measure_flow.hpp"
#include "lpcocycle/measure_suites.hpp"
#include "oracles.hpp"

using namespace lpcocycle;
using namespace lpcocycle::testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

Matrix to_matrix(const MetricTable& m) {
  Matrix d(m.size(), std::vector<int>(m.size()));
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y) d[x][y] = m(static_cast<Vertex>(x), static_cast<Vertex>(y));
  return d;
}

Atoms atoms_of(const SparseProbMeasure& mu) { return Atoms(mu.atoms().begin(), mu.atoms().end()); }

Rational q(long num, long den) { return Rational(num, den); }

}  // namespace

TEST(AnnulusSchedule, DeltaBar) {
  EXPECT_EQ(AnnulusSchedule(1).delta_bar(0), 4);
  EXPECT_EQ(AnnulusSchedule(1).delta_bar(2), 14);
  EXPECT_EQ(AnnulusSchedule(3).delta_bar(1), 27);
  EXPECT_EQ(code_of([] { AnnulusSchedule(0); }), ErrorCode::invalid_input);
}

TEST(AnnulusSchedule, NBelow) {
  EXPECT_EQ(AnnulusSchedule(1).n_below(5), 0);
  EXPECT_EQ(AnnulusSchedule(1).n_below(9), 0);
  EXPECT_EQ(AnnulusSchedule(1).n_below(9.5), 1);
  EXPECT_EQ(AnnulusSchedule(2).n_below(30), 2);
  EXPECT_EQ(code_of([] { AnnulusSchedule(1).n_below(4); }), ErrorCode::no_valid_index);
  for (int delta = 1; delta <= 3; ++delta) {
    const AnnulusSchedule s(delta);
    for (int t = 4 * delta + 1; t < 60; ++t) {
      const int n = s.n_below(t);
      ASSERT_LT(s.delta_bar(n), t);
      ASSERT_GE(s.delta_bar(n + 1), t);
    }
  }
}

TEST(SparseProbMeasure, UniformAndL1) {
  const std::vector<Vertex> one{7};
  EXPECT_EQ(SparseProbMeasure::uniform(one), SparseProbMeasure::dirac(7));
  const std::vector<Vertex> three{1, 2, 3};
  const auto u = SparseProbMeasure::uniform(three);
  for (Vertex v : three) EXPECT_EQ(u.mass(v), q(1, 3));
  EXPECT_EQ(u.total(), 1);
  EXPECT_EQ(code_of([] { SparseProbMeasure::uniform(std::span<const Vertex>{}); }), ErrorCode::empty_set);
  EXPECT_EQ(code_of([] { SparseProbMeasure::from_atoms({{0, q(1, 2)}}); }), ErrorCode::invalid_input);

  EXPECT_EQ(l1_distance(u, u), 0);
  EXPECT_EQ(l1_distance(SparseProbMeasure::dirac(0), SparseProbMeasure::dirac(1)), 2);
  const auto half = SparseProbMeasure::from_atoms({{4, q(1, 2)}, {5, q(1, 2)}});
  EXPECT_EQ(l1_distance(half, SparseProbMeasure::dirac(5)), 1);
  EXPECT_FALSE(supports_disjoint(half, SparseProbMeasure::dirac(5)));
}

TEST(SparseProbMeasure, UniformOnC6AnnulusSet) {
  // With delta = 1, from x = 3 toward a = 0 the set delta-geod ∩ S(0, 4) is empty
  // because C6 has diameter 3; check the ball-geodesic intersection directly instead.
  const Space c6 = builtin_space("cycle:6");
  std::vector<Vertex> A;
  for (Vertex v : sphere(c6.metric, 0, 2))
    if (geodesic_excess(c6.metric, 3, v, 0) <= 0) A.push_back(v);
  ASSERT_EQ(A, (std::vector<Vertex>{2, 4}));
  EXPECT_EQ(SparseProbMeasure::uniform(A).mass(2), q(1, 2));
}

TEST(StepT, NearPointsAreFixed) {
  const Space ladder = builtin_space("ladder:30");
  const AnnulusSchedule s(2);
  for (Vertex x : ball(ladder.metric, 0, 8)) {
    EXPECT_EQ(step_T(ladder.metric, s, 0, SparseProbMeasure::dirac(x)), SparseProbMeasure::dirac(x));
  }
}

TEST(StepT, LadderSplitsMassBetweenTwoPoints) {
  // Search the ladder for the configuration where one point's target set is a
  // pair {y, z} and its rung neighbour's target set is {z} alone.
  const Space ladder = builtin_space("ladder:30");
  MeasureFlow flow(ladder.metric, 1);
  bool found = false;
  for (Vertex a = 0; a < 62 && !found; ++a)
    for (Vertex x = 0; x < 62 && !found; ++x) {
      if (ladder.metric(x, a) <= 4) continue;
      const auto Ax = flow.target_set(a, x);
      if (Ax.size() != 2) continue;
      for (Vertex x2 : ladder.graph->neighbors(x)) {
        if (x2 / 2 != x / 2 || ladder.metric(x2, a) <= 4) continue;  // rung neighbour
        const auto A2 = flow.target_set(a, x2);
        if (A2.size() == 1 && (A2[0] == Ax[0] || A2[0] == Ax[1])) {
          const auto& step = flow.step_dirac(a, x);
          EXPECT_EQ(step, SparseProbMeasure::from_atoms({{Ax[0], q(1, 2)}, {Ax[1], q(1, 2)}}));
          EXPECT_EQ(l1_distance(step, flow.step_dirac(a, x2)), 1);
          found = true;
        }
      }
    }
  EXPECT_TRUE(found);
}

TEST(StepT, TreeTargetsAreSingletons) {
  const GroupBall f = free_group_ball(2, 3);
  MeasureFlow flow(f.metric(), 1);
  for (Vertex a : f.inner_ball(3))
    for (Vertex x : f.inner_ball(3)) {
      if (f.metric()(x, a) <= 4) continue;
      const auto& st = flow.step_dirac(a, x);
      ASSERT_TRUE(st.is_dirac());
      const Vertex y = st.support()[0];
      ASSERT_EQ(geodesic_excess(f.metric(), x, y, a), 0);
      ASSERT_EQ(f.metric()(y, a), flow.schedule().delta_bar(flow.schedule().n_below(f.metric()(x, a))));
    }
}

TEST(Mu, Examples) {
  const Space c6 = builtin_space("cycle:6");
  MeasureFlow c6flow(c6.metric, 2);
  for (Vertex a = 0; a < 6; ++a)
    for (Vertex x = 0; x < 6; ++x) EXPECT_EQ(c6flow.mu(a, x), SparseProbMeasure::dirac(x));

  const GroupBall f = free_group_ball(2, 5);
  MeasureFlow flow(f.metric(), 1);
  const Vertex x = *f.vertex_of(parse_word("aaaaaaaaaa"));
  const Vertex a = *f.vertex_of(parse_word("AAAAAAAAAA"));
  ASSERT_EQ(f.metric()(x, a), 20);
  EXPECT_EQ(flow.mu(a, a), SparseProbMeasure::dirac(a));
  EXPECT_EQ(flow.mu(a, x), SparseProbMeasure::dirac(*f.vertex_of(parse_word("AAAAAA"))));
}

TEST(Mu, AgreesWithLiteralIteration) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 10 + static_cast<int>(rng() % 30);
    const FiniteGraph g = random_connected_graph(n, static_cast<int>(rng() % 4), rng);
    const MetricTable m = all_pairs(g);
    const Matrix d = floyd_warshall(g);
    for (int delta : {1, 2}) {
      MeasureFlow flow(m, delta);
      for (Vertex a = 0; a < n; ++a)
        for (Vertex x = 0; x < n; ++x) ASSERT_EQ(atoms_of(flow.mu(a, x)), mu_oracle(d, delta, a, x));
    }
  }
}

TEST(Mu, LadderAgreesWithLiteralIteration) {
  const Space ladder = builtin_space("ladder:30");
  const Matrix d = to_matrix(ladder.metric);
  for (int delta : {1, 2}) {
    MeasureFlow flow(ladder.metric, delta);
    for (Vertex a = 0; a < 62; a += 3)
      for (Vertex x = 0; x < 62; ++x) ASSERT_EQ(atoms_of(flow.mu(a, x)), mu_oracle(d, delta, a, x));
  }
}

TEST(Mu, ConservationStationarityAndSettling) {
  for (const char* spec : {"ladder:30", "tree:3:5", "cycle:8", "line:20"}) {
    const Space s = builtin_space(spec);
    const int delta = hyperbolicity_report(s.metric).delta_use;
    MeasureFlow flow(s.metric, delta);
    for (Vertex a = 0; a < static_cast<Vertex>(s.size()); ++a)
      for (Vertex x = 0; x < static_cast<Vertex>(s.size()); ++x) {
        const auto& mu = flow.mu(a, x);
        ASSERT_EQ(mu.total(), 1);
        ASSERT_EQ(flow.step(a, mu), mu);
        const int d = s.metric(x, a);
        const std::size_t bound = d > 4 * delta ? flow.schedule().n_below(d) + 2 : 1;
        ASSERT_LE(flow.iterates(a, x).size(), bound + 1);
      }
  }
}

TEST(Mu, NonGraphMetricIsRejected) {
  std::vector<int> v(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v[i * 4 + j] = 3 * std::abs(i - j);
  MeasureFlow flow(MetricTable::from_values(4, v), 1);
  EXPECT_EQ(code_of([&] { flow.mu(0, 3); }), ErrorCode::empty_target);
}

TEST(CheckSupport, CorpusSpaces) {
  for (const char* spec : {"ladder:30", "tree:3:5", "line:20", "cycle:8"}) {
    const Space s = builtin_space(spec);
    const MeasureFlow flow(s.metric, hyperbolicity_report(s.metric).delta_use);
    const auto r = suite_support(flow, all_vertices(s.size()));
    EXPECT_TRUE(r.passed()) << spec;
    EXPECT_EQ(r.checked, s.size() * s.size());
  }
}

TEST(CheckSupport, TreeSupportIsOnePointOnTheGeodesic) {
  const Space t = builtin_space("tree:3:6");
  MeasureFlow flow(t.metric, 1);
  for (Vertex x = 0; x < static_cast<Vertex>(t.size()); x += 5) {
    const auto& mu = flow.mu(0, x);
    ASSERT_TRUE(mu.is_dirac());
    const Vertex v = mu.support()[0];
    EXPECT_EQ(geodesic_excess(t.metric, x, v, 0), 0);
    EXPECT_EQ(t.metric(v, 0), std::min(4, t.metric(x, 0)));
  }
}

TEST(MeasureSuites, UndersizedDeltaIsCaught) {
  // C30 is 15-hyperbolic; run at delta = 1 the annulus lemmas must fail.
  const Space c = builtin_space("cycle:30");
  const MeasureFlow flow(c.metric, 1);
  const std::int64_t C = support_bound_C(c.metric, 1);
  const auto all = all_vertices(c.size());
  const auto r46 = suite_lemma_4_6(flow, all, C);
  const auto r47 = suite_lemma_4_7(flow, all, C);
  EXPECT_GT(r46.violations, 0u);
  EXPECT_GT(r47.violations, 0u);
  EXPECT_GT(suite_contraction(flow, all, C).violations, 0u);
  ASSERT_FALSE(r47.witnesses.empty());
  EXPECT_EQ(r47.witnesses.front().tuple.size(), 3u);

  // The 12x12 grid is not hyperbolic at all.
  std::vector<Edge> e;
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      if (j + 1 < 12) e.emplace_back(i * 12 + j, i * 12 + j + 1);
      if (i + 1 < 12) e.emplace_back(i * 12 + j, (i + 1) * 12 + j);
    }
  const Space grid = make_space("grid", build_graph(e));
  const MeasureFlow gf(grid.metric, 1);
  EXPECT_GT(suite_lemma_4_5(gf, all_vertices(grid.size())).violations, 0u);
}

TEST(Decay, Examples) {
  const Space ladder = builtin_space("ladder:30");
  MeasureFlow flow(ladder.metric, 2);
  const auto k = DecayConstants::derive(support_bound_C(ladder.metric, 2), 2);
  EXPECT_EQ(k.C, 16);
  EXPECT_DOUBLE_EQ(k.eps_ann, -std::log(1.0 - 1.0 / 16));
  EXPECT_DOUBLE_EQ(k.eps_dist, k.eps_ann / 10);
  EXPECT_DOUBLE_EQ(k.C_dist, 2 * std::exp(4 * k.eps_ann / 5) * std::exp(k.eps_dist * 9));

  // n = 0: same sphere S(a, 8), within 8 of each other.
  ASSERT_EQ(ladder.metric(0, 15), 8);
  const DecayCheck d0 = check_decay_annulus(flow, k, 0, 16, 15);
  EXPECT_EQ(d0.verdict, Verdict::holds);
  EXPECT_EQ(d0.n, 0);
  EXPECT_DOUBLE_EQ(d0.bound, 2.0);
  EXPECT_EQ(check_decay_annulus(flow, k, 0, 16, 19).verdict, Verdict::precondition_unmet);

  const DecayCheck nb = check_decay(flow, k, 0, 40, 41);
  EXPECT_EQ(nb.form, DecayCheck::Form::neighbor);
  EXPECT_TRUE(nb.ok());

  const GroupBall f = free_group_ball(2, 4);
  MeasureFlow tree_flow(f.metric(), 1);
  const auto kt = DecayConstants::derive(support_bound_C(f.metric(), 1), 1);
  const Vertex a = *f.vertex_of(parse_word("AAAA"));
  const Vertex x = *f.vertex_of(parse_word("aaa"));
  const Vertex x2 = *f.vertex_of(parse_word("aaaa"));
  const DecayCheck t = check_decay(tree_flow, kt, a, x, x2);
  EXPECT_EQ(t.l1, 0);
}

TEST(Decay, LadderRungNeighboursContractPerAnnulus) {
  const Space ladder = builtin_space("ladder:30");
  MeasureFlow flow(ladder.metric, 1);
  const std::int64_t C = support_bound_C(ladder.metric, 1);
  Rational prev = 2;
  int prev_n = -1;
  for (const auto& row : single_step_rows(flow, C, 0, 1, std::vector<Vertex>{12, 22, 32, 42, 52})) {
    EXPECT_LE(row.mu_l1, row.bound);
    if (prev_n >= 0) EXPECT_LE(row.mu_l1, prev * Rational(C - 1, C));
    prev = row.mu_l1;
    prev_n = row.n;
  }
}

TEST(Lemma45, Examples) {
  const Space t = builtin_space("tree:3:6");
  MeasureFlow flow(t.metric, 1);
  EXPECT_TRUE(suite_lemma_4_5(flow, all_vertices(t.size())).passed());
  const Space ladder = builtin_space("ladder:30");
  const MeasureFlow lf(ladder.metric, 2);
  const auto r = suite_lemma_4_5(lf, all_vertices(ladder.size()));
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.checked, 0u);
}

TEST(Lemma46, Examples) {
  const Space ladder = builtin_space("ladder:30");
  MeasureFlow flow(ladder.metric, 2);
  const std::int64_t C = support_bound_C(ladder.metric, 2);
  // x = x' on S(0, 18) (n = 1).
  ASSERT_EQ(ladder.metric(0, 36), 18);
  EXPECT_TRUE(check_lemma_4_6(flow, C, 0, 36, 36).holds());
  EXPECT_EQ(check_lemma_4_6(flow, C, 0, 16, 16).verdict, Verdict::precondition_unmet);
  const auto r = suite_lemma_4_6(flow, all_vertices(ladder.size()), C);
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.checked, 0u);
}

TEST(Lemma47AndContraction, Ladder) {
  const Space ladder = builtin_space("ladder:30");
  const MeasureFlow flow(ladder.metric, 2);
  const std::int64_t C = support_bound_C(ladder.metric, 2);
  EXPECT_TRUE(suite_lemma_4_7(flow, all_vertices(62), C).passed());
  const auto c = suite_contraction(flow, all_vertices(62), C);
  EXPECT_TRUE(c.passed());
  EXPECT_GT(c.checked, 0u);
}

TEST(Disjointness, Examples) {
  const GroupBall f = free_group_ball(2, 4);
  MeasureFlow flow(f.metric(), 1);
  const auto domain = f.inner_ball(4);
  const Vertex x = *f.vertex_of(parse_word("AAAA"));
  EXPECT_EQ(disjoint_support_count(flow, x, x, domain), 0);
  for (const char* w : {"aaaa", "abab", "bbba"}) {
    const Vertex x2 = *f.vertex_of(parse_word(w));
    const int D = f.metric()(x, x2);
    ASSERT_GE(D, 8);
    EXPECT_GE(disjoint_support_count(flow, x, x2, domain), D - 7) << w;
  }
  const Space line = builtin_space("line:30");
  MeasureFlow lf(line.metric, 1);
  const auto all = all_vertices(line.size());
  for (int D = 8; D <= 30; ++D) EXPECT_GE(disjoint_support_count(lf, 0, D, all), D - 7);
}

TEST(TreeMu, ClosedFormProperties) {
  const Space t = builtin_space("tree:3:4");
  const MetricTable& m = t.metric;
  EXPECT_EQ(tree_mu(m, 5, 5), SparseProbMeasure::dirac(5));
  const auto n = static_cast<Vertex>(t.size());
  for (Vertex a = 0; a < n; ++a)
    for (Vertex x = 0; x < n; ++x) {
      const auto mu = tree_mu(m, a, x);
      ASSERT_TRUE(mu.is_dirac());
      if (a != x) {
        ASSERT_EQ(m(a, mu.support()[0]), 1);
        ASSERT_EQ(geodesic_excess(m, x, mu.support()[0], a), 0);
      }
    }
  for (Vertex x = 0; x < n; x += 7)
    for (Vertex x2 = 0; x2 < n; x2 += 3)
      for (Vertex a = 0; a < n; ++a) {
        const bool on_geodesic = geodesic_excess(m, x, a, x2) == 0;
        const Rational l1 = l1_distance(tree_mu(m, a, x), tree_mu(m, a, x2));
        ASSERT_EQ(l1, x == x2 ? 0 : (on_geodesic ? 2 : 0));
      }
  EXPECT_EQ(code_of([] { tree_mu(builtin_space("cycle:6").metric, 0, 1); }), ErrorCode::not_a_tree);
}

TEST(Equivariance, CyclesLadderAndTrees) {
  for (const char* spec : {"cycle:6", "cycle:8", "cycle:20", "ladder:30", "line:10"}) {
    const Space s = builtin_space(spec);
    const MeasureFlow flow(s.metric, hyperbolicity_report(s.metric).delta_use);
    const auto isos = total_closure(s.automorphisms);
    const auto r = suite_equivariance(flow, all_vertices(s.size()), isos);
    EXPECT_TRUE(r.passed()) << spec;
    EXPECT_GT(r.checked, 0u) << spec;
  }
  std::mt19937_64 rng(81);
  const Space t = builtin_space("tree:3:5");
  std::vector<Isometry> samples;
  for (int i = 0; i < 10; ++i) samples.push_back(random_tree_automorphism(*t.graph, 0, rng));
  const MeasureFlow tf(t.metric, 1);
  EXPECT_TRUE(suite_equivariance(tf, all_vertices(t.size()), samples).passed());
}

TEST(Equivariance, BrokenSymmetryIsCaught) {
  // A relabelling that is not an isometry must be reported.
  const Space ladder = builtin_space("ladder:10");
  std::vector<Vertex> perm(22);
  for (Vertex v = 0; v < 22; ++v) perm[v] = v;
  std::swap(perm[0], perm[21]);
  const MeasureFlow flow(ladder.metric, 2);
  const auto r = suite_equivariance(flow, all_vertices(22), std::vector<Isometry>{Isometry(perm, "bad")});
  EXPECT_GT(r.violations, 0u);
}
