#include "lpcocycle/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lpcocycle {
namespace {

std::string describe_components(const std::vector<std::vector<std::int64_t>>& components) {
  std::ostringstream out;
  out << "graph has " << components.size() << " components:";
  constexpr std::size_t kShown = 8;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (c == kShown) {
      out << " ...";
      break;
    }
    out << " {";
    const auto& comp = components[c];
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (i == kShown) {
        out << ", ... (" << comp.size() << " vertices)";
        break;
      }
      out << (i ? ", " : "") << comp[i];
    }
    out << "}";
  }
  return out.str();
}

struct Compacted {
  std::vector<std::int64_t> ids;
  std::vector<std::pair<Vertex, Vertex>> edges;  // u < v, sorted, unique
};

Compacted compact(std::span<const std::int64_t> vertices, std::span<const Edge> edges) {
  Compacted out;
  out.ids.assign(vertices.begin(), vertices.end());
  for (const auto& [u, v] : edges) {
    if (u == v) {
      throw Error(ErrorCode::self_loop, "self-loop at vertex " + std::to_string(u));
    }
    out.ids.push_back(u);
    out.ids.push_back(v);
  }
  std::sort(out.ids.begin(), out.ids.end());
  out.ids.erase(std::unique(out.ids.begin(), out.ids.end()), out.ids.end());

  auto index_of = [&](std::int64_t id) {
    return static_cast<Vertex>(std::lower_bound(out.ids.begin(), out.ids.end(), id) - out.ids.begin());
  };
  out.edges.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    Vertex a = index_of(u);
    Vertex b = index_of(v);
    if (a > b) std::swap(a, b);
    out.edges.emplace_back(a, b);
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

std::vector<std::vector<Vertex>> components_of(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto& [u, v] : edges) {
    const Vertex ru = find(u);
    const Vertex rv = find(v);
    if (ru != rv) parent[std::max(ru, rv)] = std::min(ru, rv);
  }
  std::vector<std::vector<Vertex>> by_root(n);
  for (std::size_t v = 0; v < n; ++v) by_root[find(static_cast<Vertex>(v))].push_back(static_cast<Vertex>(v));
  std::vector<std::vector<Vertex>> out;
  for (auto& c : by_root) {
    if (!c.empty()) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::size_t FiniteGraph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v < size(); ++v) best = std::max(best, degree(static_cast<Vertex>(v)));
  return best;
}

bool FiniteGraph::adjacent(Vertex u, Vertex v) const noexcept {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> FiniteGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count());
  for (std::size_t u = 0; u < size(); ++u) {
    for (Vertex v : neighbors(static_cast<Vertex>(u))) {
      if (static_cast<Vertex>(u) < v) out.emplace_back(static_cast<Vertex>(u), v);
    }
  }
  return out;
}

FiniteGraph build_graph(std::span<const Edge> edges) {
  if (edges.empty()) throw Error(ErrorCode::empty_input, "edge list is empty");
  return build_graph(std::span<const std::int64_t>{}, edges);
}

FiniteGraph build_graph(std::span<const std::int64_t> vertices, std::span<const Edge> edges) {
  Compacted c = compact(vertices, edges);
  if (c.ids.empty()) throw Error(ErrorCode::empty_input, "graph has no vertices");

  const std::size_t n = c.ids.size();
  const auto comps = components_of(n, c.edges);
  if (comps.size() > 1) {
    std::vector<std::vector<std::int64_t>> named;
    for (const auto& comp : comps) {
      auto& out = named.emplace_back();
      for (Vertex v : comp) out.push_back(c.ids[v]);
    }
    throw Error(ErrorCode::disconnected_graph, describe_components(named));
  }

  FiniteGraph g;
  g.ids_ = std::move(c.ids);
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [u, v] : c.edges) {
    ++degree[u];
    ++degree[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.assign(g.offsets_[n], 0);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : c.edges) {
    g.adjacency_[cursor[u]++] = v;
    g.adjacency_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  return g;
}

std::vector<std::vector<std::int64_t>> connected_components(std::span<const std::int64_t> vertices,
                                                            std::span<const Edge> edges) {
  Compacted c = compact(vertices, edges);
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& comp : components_of(c.ids.size(), c.edges)) {
    auto& named = out.emplace_back();
    for (Vertex v : comp) named.push_back(c.ids[v]);
  }
  return out;
}

void bfs_distances(const FiniteGraph& g, Vertex source, std::span<int> out) {
  std::fill(out.begin(), out.end(), -1);
  std::vector<Vertex> queue;
  queue.reserve(g.size());
  queue.push_back(source);
  out[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    const int next = out[u] + 1;
    for (Vertex v : g.neighbors(u)) {
      if (out[v] < 0) {
        out[v] = next;
        queue.push_back(v);
      }
    }
  }
}

std::vector<Reached> local_ball(const FiniteGraph& g, Vertex source, int max_depth) {
  return local_ball(g, source, max_depth, [](Vertex, int) { return true; });
}

std::vector<Reached> local_ball(const FiniteGraph& g, Vertex source, int max_depth,
                                const std::function<bool(Vertex, int)>& admit) {
  thread_local std::vector<std::uint32_t> stamp;
  thread_local std::uint32_t epoch = 0;
  if (stamp.size() < g.size()) {
    stamp.assign(g.size(), 0);
    epoch = 0;
  }
  if (++epoch == 0) {
    std::fill(stamp.begin(), stamp.end(), 0);
    epoch = 1;
  }

  std::vector<Reached> out;
  stamp[source] = epoch;
  if (!admit(source, 0)) return out;
  out.push_back({source, 0});
  for (std::size_t head = 0; head < out.size(); ++head) {
    const auto [u, depth] = out[head];
    if (depth == max_depth) continue;
    for (Vertex v : g.neighbors(u)) {
      if (stamp[v] != epoch) {
        stamp[v] = epoch;
        if (admit(v, depth + 1)) out.push_back({v, depth + 1});
      }
    }
  }
  return out;
}

}  // namespace lpcocycle
