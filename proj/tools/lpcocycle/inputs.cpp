#include "inputs.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>
#include <random>

#include "lpcocycle/io.hpp"

namespace lpcocycle::cli {

Input load_input(const RunConfig& c, bool allow_bare) {
  const int given = !c.graph_path.empty() + !c.metric_path.empty() + !c.builtin.empty();
  if (given != 1) throw Error(ErrorCode::invalid_input, "give exactly one of --graph, --metric, --builtin");
  Input in;
  if (!c.metric_path.empty()) {
    MetricTable m = load_metric(c.metric_path);
    if (m.graph_backed()) {
      in.space = make_space(c.metric_path, *m.shared_graph());
      in.graph = true;
    } else {
      if (!allow_bare) throw Error(ErrorCode::invalid_input, c.subcommand + " needs a graph, not a bare metric");
      in.bare = std::move(m);
    }
  } else {
    in.space = c.builtin.empty() ? load_space(c.graph_path) : builtin_space(c.builtin);
    in.graph = true;
  }
  if (in.graph) {
    const auto ids = in.space.graph->original_ids();
    in.ids.assign(ids.begin(), ids.end());
  } else {
    in.ids.resize(in.bare.size());
    std::iota(in.ids.begin(), in.ids.end(), 0);
  }
  return in;
}

Vertex resolve_vertex(const Input& in, const std::string& ref) {
  if (in.graph) {
    const auto& labels = in.space.labels;
    const auto it = std::find(labels.begin(), labels.end(), ref);
    if (it != labels.end()) return static_cast<Vertex>(it - labels.begin());
  }
  std::size_t used = 0;
  std::int64_t id = 0;
  try {
    id = std::stoll(ref, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != ref.size()) throw Error(ErrorCode::invalid_input, "unknown vertex '" + ref + "'");
  const auto it = std::lower_bound(in.ids.begin(), in.ids.end(), id);
  if (it == in.ids.end() || *it != id) throw Error(ErrorCode::invalid_input, "unknown vertex id " + ref);
  return static_cast<Vertex>(it - in.ids.begin());
}

int default_margin(const Space& s, int delta) {
  if (s.boundary.empty()) return 0;
  if (s.inner_radius >= 0 && s.radius >= s.inner_radius) return s.radius - s.inner_radius;
  return 4 * delta;
}

std::vector<Vertex> region_for(const Input& in, const RunConfig& c, int delta) {
  std::vector<Vertex> region;
  if (in.graph) {
    region = safe_region(in.space, c.margin.value_or(default_margin(in.space, delta)));
  } else {
    region.resize(in.size());
    std::iota(region.begin(), region.end(), 0);
  }
  if (c.sample > 0 && region.size() > c.sample) {
    std::vector<Vertex> kept;
    std::mt19937_64 rng(c.seed);
    std::sample(region.begin(), region.end(), std::back_inserter(kept), c.sample, rng);
    region = std::move(kept);
  }
  return region;
}

int choose_delta(const RunConfig& c, const MetricTable& m) {
  if (c.delta) {
    if (*c.delta < 1) throw Error(ErrorCode::invalid_input, "--delta must be at least 1");
    return *c.delta;
  }
  return std::max(1, four_point_delta(m).delta_min);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_file(path, text);
  }
}

void emit(const RunConfig& c, const nlohmann::json& report) { emit(c.out_path, report.dump(2) + "\n"); }

void note(const RunConfig& c, const std::string& line) {
  if (c.verbosity > 0) std::cerr << "lpcocycle: " << line << '\n';
}

}  // namespace lpcocycle::cli
