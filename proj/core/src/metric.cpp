#include "lpcocycle/metric.hpp"

#include <algorithm>
#include <mutex>

#include "lpcocycle/parallel.hpp"

namespace lpcocycle {

struct MetricTable::State {
  std::size_t n = 0;
  std::shared_ptr<const FiniteGraph> graph;
  std::vector<std::unique_ptr<Cell[]>> rows;
  std::unique_ptr<std::once_flag[]> ready;  // on-demand rows only
  bool lazy = false;

  void fill_row(Vertex u) {
    std::vector<int> dist(n);
    bfs_distances(*graph, u, dist);
    auto row = std::make_unique<Cell[]>(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] > kMaxDistance) {
        throw Error(ErrorCode::size_limit, "graph distance exceeds " + std::to_string(kMaxDistance));
      }
      row[v] = static_cast<Cell>(dist[v]);
    }
    rows[static_cast<std::size_t>(u)] = std::move(row);
  }
};

MetricTable MetricTable::of_graph(std::shared_ptr<const FiniteGraph> graph, Storage storage) {
  if (!graph || graph->size() == 0) throw Error(ErrorCode::empty_input, "metric of an empty graph");
  MetricTable m;
  m.state_ = std::make_shared<State>();
  State& s = *m.state_;
  s.n = graph->size();
  s.graph = std::move(graph);
  s.rows.resize(s.n);
  s.lazy = storage == Storage::on_demand || (storage == Storage::automatic && s.n > kDenseLimit);
  if (s.lazy) {
    s.ready = std::make_unique<std::once_flag[]>(s.n);
  } else {
    parallel_for(s.n, [&](std::size_t u) { s.fill_row(static_cast<Vertex>(u)); });
  }
  return m;
}

MetricTable MetricTable::from_values(std::size_t n, std::span<const int> row_major) {
  if (n == 0) throw Error(ErrorCode::empty_input, "metric on zero points");
  if (row_major.size() != n * n) throw Error(ErrorCode::invalid_input, "distance matrix has wrong size");
  MetricTable m;
  m.state_ = std::make_shared<State>();
  State& s = *m.state_;
  s.n = n;
  s.rows.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    auto row = std::make_unique<Cell[]>(n);
    for (std::size_t v = 0; v < n; ++v) {
      const int d = row_major[u * n + v];
      if (d < 0 || d > kMaxDistance) {
        throw Error(ErrorCode::invalid_input, "distance out of range at (" + std::to_string(u) + ", " +
                                                  std::to_string(v) + ")");
      }
      if ((u == v) != (d == 0)) {
        throw Error(ErrorCode::invalid_input, "d(x, y) = 0 must hold exactly when x = y; broken at (" +
                                                  std::to_string(u) + ", " + std::to_string(v) + ")");
      }
      if (d != row_major[v * n + u]) {
        throw Error(ErrorCode::invalid_input,
                    "asymmetric distance at (" + std::to_string(u) + ", " + std::to_string(v) + ")");
      }
      row[v] = static_cast<Cell>(d);
    }
    s.rows[u] = std::move(row);
  }
  return m;
}

std::size_t MetricTable::size() const noexcept { return state_ ? state_->n : 0; }

std::span<const MetricTable::Cell> MetricTable::row(Vertex u) const {
  State& s = *state_;
  if (s.lazy) std::call_once(s.ready[static_cast<std::size_t>(u)], [&] { s.fill_row(u); });
  return {s.rows[static_cast<std::size_t>(u)].get(), s.n};
}

const FiniteGraph* MetricTable::graph() const noexcept { return state_ ? state_->graph.get() : nullptr; }

std::shared_ptr<const FiniteGraph> MetricTable::shared_graph() const noexcept {
  return state_ ? state_->graph : nullptr;
}

int MetricTable::eccentricity(Vertex u) const {
  const auto r = row(u);
  return *std::max_element(r.begin(), r.end());
}

MetricTable all_pairs(std::shared_ptr<const FiniteGraph> graph) {
  return MetricTable::of_graph(std::move(graph), MetricTable::Storage::dense);
}

MetricTable all_pairs(const FiniteGraph& graph) { return all_pairs(std::make_shared<const FiniteGraph>(graph)); }

std::vector<Vertex> ball(const MetricTable& m, Vertex x, int r) {
  std::vector<Vertex> out;
  const auto row = m.row(x);
  for (std::size_t v = 0; v < row.size(); ++v) {
    if (row[v] <= r) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::vector<Vertex> sphere(const MetricTable& m, Vertex x, int r) {
  std::vector<Vertex> out;
  const auto row = m.row(x);
  for (std::size_t v = 0; v < row.size(); ++v) {
    if (row[v] == r) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::vector<Vertex> eps_geod(const MetricTable& m, Vertex x, Vertex y, int eps) {
  std::vector<Vertex> out;
  const auto rx = m.row(x);
  const auto ry = m.row(y);
  const int bound = rx[static_cast<std::size_t>(y)] + eps;
  for (std::size_t z = 0; z < rx.size(); ++z) {
    if (rx[z] + ry[z] <= bound) out.push_back(static_cast<Vertex>(z));
  }
  return out;
}

std::vector<Reached> eps_geod_local(const MetricTable& m, Vertex x, Vertex y, int eps, int max_depth) {
  const auto ry = m.row(y);
  const int bound = ry[static_cast<std::size_t>(x)] + eps;
  if (const FiniteGraph* g = m.graph()) {
    const int depth = max_depth < 0 ? bound : std::min(bound, max_depth);
    return local_ball(*g, x, depth, [&](Vertex v, int d) { return d + ry[static_cast<std::size_t>(v)] <= bound; });
  }
  std::vector<Reached> out;
  const auto rx = m.row(x);
  for (std::size_t z = 0; z < rx.size(); ++z) {
    if (rx[z] + ry[z] <= bound && (max_depth < 0 || rx[z] <= max_depth)) {
      out.push_back({static_cast<Vertex>(z), rx[z]});
    }
  }
  return out;
}

std::optional<std::size_t> PairIndex::index(Vertex x, Vertex y) const {
  if (x < 0 || static_cast<std::size_t>(x) + 1 >= offsets_.size()) return std::nullopt;
  const auto first = pairs_.begin() + static_cast<std::ptrdiff_t>(offsets_[x]);
  const auto last = pairs_.begin() + static_cast<std::ptrdiff_t>(offsets_[x + 1]);
  const auto it = std::lower_bound(first, last, Pair{x, y});
  if (it == last || *it != Pair{x, y}) return std::nullopt;
  return static_cast<std::size_t>(it - pairs_.begin());
}

PairIndex pair_index(const MetricTable& m, int R) {
  if (R < 0) throw Error(ErrorCode::invalid_input, "pair index radius must be nonnegative");
  PairIndex index;
  index.radius_ = R;
  const std::size_t n = m.size();
  index.offsets_.assign(n + 1, 0);
  for (std::size_t x = 0; x < n; ++x) {
    index.offsets_[x] = index.pairs_.size();
    for (Vertex y : ball(m, static_cast<Vertex>(x), R)) index.pairs_.emplace_back(static_cast<Vertex>(x), y);
  }
  index.offsets_[n] = index.pairs_.size();
  return index;
}

}  // namespace lpcocycle
