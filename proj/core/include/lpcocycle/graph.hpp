#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "lpcocycle/error.hpp"

namespace lpcocycle {

/// Edge between two caller-side vertex ids (arbitrary integers before compaction).
using Edge = std::pair<std::int64_t, std::int64_t>;

/// Finite, connected, simple, undirected graph with dense vertex ids 0..n-1.
///
/// Adjacency is stored in CSR form with every neighbour list sorted. The
/// original caller ids are kept so reports can name vertices the way the input
/// did.
class FiniteGraph {
 public:
  FiniteGraph() = default;

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept;
  bool adjacent(Vertex u, Vertex v) const noexcept;

  /// Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  /// Caller id of each compacted vertex, ascending.
  std::span<const std::int64_t> original_ids() const noexcept { return ids_; }

  /// Connected by construction, so a tree is exactly n - 1 edges.
  bool is_tree() const noexcept { return edge_count() + 1 == size(); }

 private:
  friend FiniteGraph build_graph(std::span<const std::int64_t>, std::span<const Edge>);

  std::vector<std::int64_t> ids_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

/// Builds and validates a graph from an edge list. Duplicate and reversed edges
/// collapse; ids are compacted in ascending order.
///
/// Throws Error with empty_input (no edges), self_loop, or disconnected_graph
/// (the message lists the components by original id).
FiniteGraph build_graph(std::span<const Edge> edges);

/// Same as above, but isolated vertices may be listed explicitly so that a
/// single-vertex space can be expressed. Rejects an empty vertex set.
FiniteGraph build_graph(std::span<const std::int64_t> vertices, std::span<const Edge> edges);

/// Connected components of an arbitrary edge list, by original id. Used for
/// error reporting and by tools that want to inspect bad inputs.
std::vector<std::vector<std::int64_t>> connected_components(std::span<const std::int64_t> vertices,
                                                            std::span<const Edge> edges);

/// Full BFS from source. Distances are written into out (size n).
void bfs_distances(const FiniteGraph& g, Vertex source, std::span<int> out);

/// Vertex together with its BFS depth from the scan source.
struct Reached {
  Vertex vertex;
  int depth;
};

/// BFS from source truncated at max_depth. Returns vertices in BFS order.
/// Uses thread-local scratch so repeated small scans on large graphs stay cheap.
std::vector<Reached> local_ball(const FiniteGraph& g, Vertex source, int max_depth);

/// Like local_ball, but a vertex is only recorded and expanded when
/// admit(vertex, depth) holds. Depths stay exact graph distances as long as the
/// admitted set is closed under taking geodesic predecessors from source.
std::vector<Reached> local_ball(const FiniteGraph& g, Vertex source, int max_depth,
                                const std::function<bool(Vertex, int)>& admit);

}  // namespace lpcocycle
