#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lpcocycle/graph.hpp"

namespace lpcocycle {

/// Exact integer distance table of a finite metric space.
///
/// Two flavours share one interface. Graph-backed tables hold the BFS metric
/// of a FiniteGraph; their rows are either filled eagerly or computed on first
/// use (write-once, safe to race). Explicit tables come from a caller-supplied
/// distance matrix and need not be graph metrics; only the rescale module and
/// the axiom checker are meant to consume those.
///
/// Copies share the underlying rows.
class MetricTable {
 public:
  using Cell = std::uint16_t;
  static constexpr int kMaxDistance = 65534;

  enum class Storage { automatic, dense, on_demand };

  /// Graphs up to this many vertices get a dense table under Storage::automatic.
  static constexpr std::size_t kDenseLimit = 2048;

  static MetricTable of_graph(std::shared_ptr<const FiniteGraph> graph, Storage storage = Storage::automatic);

  /// Row-major n*n matrix. Requires zero diagonal, symmetry and nonnegative
  /// entries; the triangle inequality is deliberately not enforced (see
  /// check_metric_axioms).
  static MetricTable from_values(std::size_t n, std::span<const int> row_major);

  MetricTable() = default;

  std::size_t size() const noexcept;
  int operator()(Vertex u, Vertex v) const { return row(u)[static_cast<std::size_t>(v)]; }
  std::span<const Cell> row(Vertex u) const;

  /// Null for explicit tables.
  const FiniteGraph* graph() const noexcept;
  std::shared_ptr<const FiniteGraph> shared_graph() const noexcept;
  bool graph_backed() const noexcept { return graph() != nullptr; }

  /// Largest distance from u.
  int eccentricity(Vertex u) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Dense BFS table of a graph (all rows computed up front).
MetricTable all_pairs(std::shared_ptr<const FiniteGraph> graph);
MetricTable all_pairs(const FiniteGraph& graph);

/// Closed ball B(x, r), ascending.
std::vector<Vertex> ball(const MetricTable& m, Vertex x, int r);

/// Sphere S(x, r), ascending; empty beyond the eccentricity.
std::vector<Vertex> sphere(const MetricTable& m, Vertex x, int r);

/// {z : d(x,z) + d(z,y) <= d(x,y) + eps}, ascending. eps = 0 gives the geodesic set.
std::vector<Vertex> eps_geod(const MetricTable& m, Vertex x, Vertex y, int eps);

/// Members of eps_geod(x, y, eps) paired with their distance from x,
/// optionally capped at d(x, z) <= max_depth. On graph tables this is a BFS
/// from x pruned to the set, which is star-shaped around x; only row(y) is
/// read. Order unspecified.
std::vector<Reached> eps_geod_local(const MetricTable& m, Vertex x, Vertex y, int eps, int max_depth = -1);

/// Excess d(x,z) + d(z,y) - d(x,y); z is in eps_geod(x, y, eps) iff excess <= eps.
inline int geodesic_excess(const MetricTable& m, Vertex x, Vertex z, Vertex y) {
  return m(x, z) + m(z, y) - m(x, y);
}

/// Enumerated set of ordered pairs (x, y) with d(x, y) <= R, with a two-way map.
class PairIndex {
 public:
  using Pair = std::pair<Vertex, Vertex>;

  int radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  std::span<const Pair> pairs() const noexcept { return pairs_; }
  const Pair& operator[](std::size_t i) const { return pairs_[i]; }
  std::optional<std::size_t> index(Vertex x, Vertex y) const;

 private:
  friend PairIndex pair_index(const MetricTable&, int);

  int radius_ = 0;
  std::vector<Pair> pairs_;           // sorted lexicographically
  std::vector<std::size_t> offsets_;  // first pair of each x
};

PairIndex pair_index(const MetricTable& m, int R);

}  // namespace lpcocycle
