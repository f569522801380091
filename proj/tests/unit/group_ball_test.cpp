#include <gtest/gtest.h>

#include <random>
#include <set>

#include "corpus.hpp"
#include "lpcocycle/group_ball.hpp"
#include "lpcocycle/isometry.hpp"

using namespace lpcocycle;
using namespace lpcocycle::testing;

TEST(Words, ReduceMultiplyLabel) {
  EXPECT_EQ(reduce({1, 2, -2, -1}), Word{});
  EXPECT_EQ(multiply({1, 2}, {-2, 1}), (Word{1, 1}));
  EXPECT_EQ(inverse({1, -2}), (Word{2, -1}));
  EXPECT_EQ(word_label({}), "e");
  EXPECT_EQ(word_label({1, -2}), "aB");
  EXPECT_EQ(parse_word("aBa"), (Word{1, -2, 1}));
  EXPECT_EQ(parse_word("e"), Word{});
  EXPECT_THROW(parse_word("a1"), Error);
}

TEST(FreeGroupBall, RankOneIsASegment) {
  const GroupBall z = free_group_ball(1, 3);
  EXPECT_EQ(z.space().size(), 13u);
  EXPECT_TRUE(z.space().graph->is_tree());
  EXPECT_EQ(z.space().graph->max_degree(), 2u);
  EXPECT_EQ(z.metric()(*z.vertex_of(parse_word("AAAAAA")), *z.vertex_of(parse_word("aaaaaa"))), 12);
}

TEST(FreeGroupBall, RankTwoCounts) {
  const GroupBall f = free_group_ball(2, 2);
  EXPECT_EQ(f.space().size(), 161u);
  EXPECT_EQ(f.inner_ball(2).size(), 17u);
  EXPECT_EQ(f.word(f.identity()), Word{});
  const GroupBall f3 = free_group_ball(2, 3);
  EXPECT_EQ(f3.metric()(f3.identity(), *f3.vertex_of(parse_word("abA"))), 3);
}

TEST(FreeGroupBall, ShortlexNumbering) {
  const GroupBall f = free_group_ball(2, 1);
  std::vector<std::string> first;
  for (Vertex v = 0; v < 5; ++v) first.push_back(word_label(f.word(v)));
  EXPECT_EQ(first, (std::vector<std::string>{"e", "a", "A", "b", "B"}));
}

TEST(FreeGroupBall, SizeLimit) {
  try {
    free_group_ball(3, 6, 1000);
    FAIL() << "expected SizeLimit";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::size_limit);
  }
}

TEST(FreeGroupBall, InnerMetricIsWordMetric) {
  for (int N : {2, 3}) {
    const GroupBall f = free_group_ball(2, N);
    const auto inner = f.inner_ball(N);
    for (Vertex x : inner)
      for (Vertex y : inner) {
        const Word between = multiply(inverse(f.word(x)), f.word(y));
        ASSERT_EQ(f.metric()(x, y), static_cast<int>(between.size()));
      }
  }
}

TEST(Isometry, ActAndCompose) {
  const Space c6 = builtin_space("cycle:6");
  const Isometry& rot = c6.automorphisms.at(0);
  EXPECT_EQ(Isometry::identity(6)(4), 4);
  EXPECT_EQ(c6.metric(0, 3), c6.metric(rot(0), rot(3)));
  const Isometry r2 = compose(rot, rot);
  EXPECT_EQ(r2(0), rot(rot(0)));
  EXPECT_EQ(compose(rot, inverse(rot)), Isometry::identity(6));
  EXPECT_THROW(Isometry({0, 0}), Error);
  EXPECT_THROW(Isometry({0, 5}), Error);
}

TEST(Isometry, PartialTranslationOnFreeBall) {
  const GroupBall f = free_group_ball(2, 2);
  const Isometry a = f.left_translation(parse_word("a"));
  EXPECT_FALSE(a.is_total());
  const Vertex e = f.identity();
  const Vertex b = *f.vertex_of(parse_word("b"));
  EXPECT_EQ(a(e), *f.vertex_of(parse_word("a")));
  EXPECT_EQ(f.metric()(e, b), f.metric()(a(e), a(b)));
  const Vertex far = *f.vertex_of(parse_word("AAAA"));
  const Vertex edge = *f.vertex_of(parse_word("bbbb"));
  EXPECT_EQ(a(far), *f.vertex_of(parse_word("AAA")));
  try {
    a.act(edge);
    FAIL() << "expected OutOfDomain";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::out_of_domain);
  }
  EXPECT_TRUE(check_isometry(f.metric(), a, f.inner_ball(2)).ok);
}

TEST(Builtins, ShapesAndAutomorphisms) {
  const Space ladder = builtin_space(Builtin::ladder, 30);
  EXPECT_EQ(ladder.size(), 62u);
  EXPECT_EQ(ladder.graph->edge_count(), 31u + 2u * 30u);
  EXPECT_TRUE(ladder.graph->adjacent(0, 1));   // rung at i = 0
  EXPECT_TRUE(ladder.graph->adjacent(0, 2));   // rail
  EXPECT_EQ(builtin_space("line:10").size(), 11u);
  EXPECT_EQ(builtin_space("tree:3:7").size(), 382u);
  EXPECT_THROW(builtin_space("hexagon:4"), Error);
  for (const char* spec : {"line:10", "ladder:30", "cycle:6", "cycle:8", "tree:3:5", "free:2:2"}) {
    const Space s = builtin_space(spec);
    ASSERT_FALSE(s.automorphisms.empty()) << spec;
    for (const auto& g : s.automorphisms) EXPECT_TRUE(check_isometry(s.metric, g).ok) << spec << " " << g.label();
  }
}

TEST(Builtins, TreeGeneratorsActTransitivelyOnSpheres) {
  const Space t = builtin_space("tree:3:4");
  std::set<Vertex> orbit{1};
  std::vector<Vertex> frontier{1};
  while (!frontier.empty()) {
    const Vertex v = frontier.back();
    frontier.pop_back();
    for (const auto& g : t.automorphisms) {
      if (orbit.insert(g(v)).second) frontier.push_back(g(v));
    }
  }
  EXPECT_EQ(orbit.size(), sphere(t.metric, 0, t.metric(0, 1)).size());
}

TEST(SafeRegion, Examples) {
  const GroupBall f = free_group_ball(2, 3);
  EXPECT_EQ(safe_region(f.space(), 0).size(), f.space().size());
  EXPECT_EQ(safe_region(f.space(), 4), f.inner_ball(2));
  EXPECT_EQ(safe_region(builtin_space("line:10"), 3), (std::vector<Vertex>{3, 4, 5, 6, 7}));
  EXPECT_EQ(safe_region(builtin_space("cycle:6"), 5).size(), 6u);
  try {
    safe_region(f.space(), 7);
    FAIL() << "expected EmptyRegion";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_region);
  }
}

TEST(PairIdentification, Examples) {
  const GroupBall f = free_group_ball(2, 3);
  const std::vector<Word> translations{{1}, {-2}, {1, 2}};
  const auto r0 = pair_identification(f, 0, translations);
  EXPECT_TRUE(r0.passed());
  EXPECT_EQ(r0.domain_size, f.inner_ball(3).size());
  const auto r1 = pair_identification(f, 1, translations);
  EXPECT_TRUE(r1.passed());
  EXPECT_EQ(r1.domain_size, f.inner_ball(3).size() * 5);
  EXPECT_GT(r1.equivariance_checked, 0u);
  for (int R = 2; R <= 3; ++R) EXPECT_TRUE(pair_identification(f, R, translations).passed()) << R;
}

TEST(TreeAutomorphisms, RandomSamplesAreIsometriesFixingRoot) {
  std::mt19937_64 rng(61);
  const Space t = builtin_space("tree:3:5");
  const Space sub = subdivided_tree(3, 3, 3);
  std::set<std::vector<Vertex>> distinct;
  for (int i = 0; i < 50; ++i) {
    const Isometry g = random_tree_automorphism(*t.graph, 0, rng);
    ASSERT_TRUE(g.is_total());
    EXPECT_EQ(g(0), 0);
    EXPECT_TRUE(check_isometry(t.metric, g).ok);
    distinct.insert(std::vector<Vertex>(g.image().begin(), g.image().end()));
    const Isometry h = random_tree_automorphism(*sub.graph, 0, rng);
    EXPECT_TRUE(check_isometry(sub.metric, h).ok);
  }
  EXPECT_GT(distinct.size(), 40u);
}

TEST(SubdividedTree, Shape) {
  const Space s = subdivided_tree(3, 3, 3);
  EXPECT_EQ(s.size(), 22u + 2u * 21u);
  EXPECT_TRUE(s.graph->is_tree());
  EXPECT_EQ(s.metric.eccentricity(0), 9);
  EXPECT_EQ(s.boundary.size(), 12u);
}
