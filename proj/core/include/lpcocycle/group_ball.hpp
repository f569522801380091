#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lpcocycle/isometry.hpp"
#include "lpcocycle/metric.hpp"

namespace lpcocycle {

/// A finite graph with everything the geometry needs to know about how it was
/// cut out of a larger space.
///
/// `boundary` lists the vertices where the window was truncated; points far
/// from it see the same local geometry as in the untruncated space. A space
/// without boundary (a cycle, an imported closed graph) is honest everywhere.
struct Space {
  std::string name;
  std::shared_ptr<const FiniteGraph> graph;
  MetricTable metric;
  std::vector<std::string> labels;       // optional, aligned with vertices
  std::vector<Isometry> automorphisms;   // generators; partial ones allowed
  std::optional<Vertex> center;
  int radius = -1;                       // ball radius around center, if any
  int inner_radius = -1;                 // N for a Cayley ball B(1, 2N)
  std::vector<Vertex> boundary;

  std::size_t size() const noexcept { return graph ? graph->size() : 0; }
};

/// Wraps a graph with its metric (dense when small, on-demand rows otherwise).
Space make_space(std::string name, FiniteGraph graph);

/// Free-group words in letters +-(i+1); -k is the inverse of generator k.
using Word = std::vector<int>;

Word reduce(Word w);
Word inverse(const Word& w);
Word multiply(const Word& u, const Word& v);

/// "e" for the identity; generators print as a, b, c, ... and inverses in
/// upper case ("aB" is a * b^-1).
std::string word_label(const Word& w);
Word parse_word(const std::string& label);

/// B(1, 2N) in the Cayley graph of the free group of the given rank with the
/// standard generators. Distances between points of B(1, N) are exact word
/// distances. Vertices are numbered in shortlex order (a < A < b < B < ...),
/// so the identity is vertex 0.
class GroupBall {
 public:
  int rank() const noexcept { return rank_; }
  int inner_radius() const noexcept { return inner_radius_; }
  Vertex identity() const noexcept { return 0; }
  const Space& space() const noexcept { return space_; }
  const MetricTable& metric() const noexcept { return space_.metric; }

  const Word& word(Vertex v) const { return words_.at(static_cast<std::size_t>(v)); }
  std::optional<Vertex> vertex_of(const Word& w) const;

  /// x -> g x on the vertices whose product stays inside the ball.
  Isometry left_translation(const Word& g) const;

  /// Vertices of B(1, r), ascending.
  std::vector<Vertex> inner_ball(int r) const;

 private:
  friend GroupBall free_group_ball(int rank, int N, std::size_t max_vertices);

  int rank_ = 0;
  int inner_radius_ = 0;
  std::vector<Word> words_;
  std::map<Word, Vertex> index_;
  Space space_;
};

/// Throws SizeLimit when the ball would exceed max_vertices.
GroupBall free_group_ball(int rank, int N, std::size_t max_vertices = 2'000'000);

enum class Builtin { line, ladder, cycle, regular_tree };

/// line(L): path 0..L, reflection plus a partial shift.
/// ladder(L): vertices 2i + e for i in [0, L], e in {0, 1}; rungs and rails;
///   rail swap, reflection, partial shift.
/// cycle(n): rotation and reflection.
/// regular_tree(q, r): ball of radius r in the q-regular tree around vertex 0,
///   with automorphisms that generate its full automorphism group.
Space builtin_space(Builtin kind, int p1, int p2 = 0);

/// Parses "line:10", "ladder:30", "cycle:6", "tree:3:7" and "free:2:4".
Space builtin_space(const std::string& spec);

/// Points at distance >= margin from the truncation boundary (every point when
/// there is no boundary), ascending. Throws EmptyRegion if none remain.
std::vector<Vertex> safe_region(const Space& space, int margin);

struct PairIdentificationReport {
  int R = 0;
  std::uint64_t domain_size = 0;   // pairs (x, y), x in B(1,N), d(x,y) <= R
  std::uint64_t target_size = 0;   // |B(1,N)| * |B(1,R)|
  std::uint64_t outside_target = 0;
  std::uint64_t collisions = 0;
  std::uint64_t missed = 0;        // target points with no preimage
  std::uint64_t equivariance_checked = 0;
  std::uint64_t equivariance_failures = 0;
  std::vector<std::string> failures;  // first few, human readable

  bool bijective() const noexcept { return outside_target == 0 && collisions == 0 && missed == 0; }
  bool passed() const noexcept { return bijective() && equivariance_failures == 0; }
};

/// Verifies that (x, y) -> (x, x^-1 y) maps the pairs with x in B(1,N) and
/// d(x,y) <= R bijectively onto B(1,N) x B(1,R), and that left translation by
/// each of `translations` preserves the second coordinate.
PairIdentificationReport pair_identification(const GroupBall& ball, int R, const std::vector<Word>& translations);

/// Uniformly random automorphism of a finite tree fixing `root`, obtained by
/// shuffling isomorphic child subtrees at every vertex.
Isometry random_tree_automorphism(const FiniteGraph& tree, Vertex root, std::mt19937_64& rng);

}  // namespace lpcocycle
