#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpcocycle/group_ball.hpp"
#include "lpcocycle/hyperbolicity.hpp"
#include "run_config.hpp"

namespace lpcocycle::cli {

/// A loaded space, or a bare metric when the input was a metric document.
struct Input {
  Space space;                      // graph-backed inputs
  MetricTable bare;                 // metric documents
  bool graph = false;
  std::vector<std::int64_t> ids;    // report name of each dense vertex

  const MetricTable& metric() const { return graph ? space.metric : bare; }
  std::size_t size() const { return metric().size(); }
};

/// Reads --graph, --metric or --builtin. Metric documents are only accepted
/// when allow_bare is set.
Input load_input(const RunConfig& c, bool allow_bare);

/// A vertex label, else an original vertex id.
Vertex resolve_vertex(const Input& in, const std::string& ref);

/// Distance from the truncation boundary below which local geometry is not
/// trusted: none for closed spaces, the collar outside B(1, N) for Cayley
/// balls, 4 delta otherwise.
int default_margin(const Space& s, int delta);

/// Safe region, thinned to cfg.sample points (seeded) when requested.
std::vector<Vertex> region_for(const Input& in, const RunConfig& c, int delta);

/// delta from the config, else max(1, delta_min) of the metric.
int choose_delta(const RunConfig& c, const MetricTable& m);

/// Writes to --out, or stdout when no path was given.
void emit(const std::string& path, const std::string& text);
void emit(const RunConfig& c, const nlohmann::json& report);

/// Progress line on stderr at verbosity >= 1.
void note(const RunConfig& c, const std::string& line);

}  // namespace lpcocycle::cli
