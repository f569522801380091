#include "lpcocycle/rescale.hpp"

#include <algorithm>

#include "lpcocycle/measure_flow.hpp"
#include "lpcocycle/parallel.hpp"

namespace lpcocycle {

ChainRescaling chain_metric(const MetricTable& m, int delta) {
  if (delta < 0) throw Error(ErrorCode::invalid_input, "delta must be nonnegative");
  const std::size_t n = m.size();
  std::vector<std::int64_t> ids(n);
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < n; ++x) {
    ids[x] = static_cast<std::int64_t>(x);
    const auto rx = m.row(static_cast<Vertex>(x));
    for (std::size_t y = x + 1; y < n; ++y) {
      if (rx[y] <= delta + 1) edges.emplace_back(x, y);
    }
  }
  const auto comps = connected_components(ids, edges);
  if (comps.size() > 1) {
    throw Error(ErrorCode::chain_disconnected,
                "points " + std::to_string(comps[0].front()) + " and " + std::to_string(comps[1].front()) +
                    " are not joined by steps of length <= " + std::to_string(delta + 1));
  }
  ChainRescaling r;
  r.source = m;
  r.delta = delta;
  r.graph = std::make_shared<const FiniteGraph>(build_graph(ids, edges));
  r.chain = MetricTable::of_graph(r.graph);
  return r;
}

Prop51Report verify_prop_5_1(const ChainRescaling& r) {
  Prop51Report rep;
  rep.weak = weakly_geodesic_check(r.source, r.delta);
  rep.lower_asserted = rep.weak.ok;
  const std::size_t n = r.source.size();
  auto note = [&](std::string s) {
    if (rep.witnesses.size() < 8) rep.witnesses.push_back(std::move(s));
  };
  for (Vertex x = 0; static_cast<std::size_t>(x) < n; ++x) {
    const auto d = r.source.row(x);
    const auto dc = r.chain.row(x);
    for (std::size_t y = 0; y < n; ++y) {
      ++rep.pairs;
      const auto pair = "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
      if (d[y] > (r.delta + 1) * dc[y]) {
        ++rep.upper_violations;
        note("d > (delta + 1) d' at " + pair);
      }
      if (rep.lower_asserted && dc[y] > d[y] + 1) {
        ++rep.lower_violations;
        note("d' > d + 1 at " + pair);
      }
      if (dc[y] > 0) rep.max_ratio = std::max(rep.max_ratio, static_cast<double>(d[y]) / dc[y]);
      rep.max_excess = std::max(rep.max_excess, static_cast<int>(dc[y]) - static_cast<int>(d[y]));
    }
  }
  return rep;
}

PipelineReport pipeline_theorem_5_2(const MetricTable& m, int delta) {
  const ChainRescaling r = chain_metric(m, delta);
  PipelineReport rep;
  rep.rescaled = hyperbolicity_report(r.chain);
  rep.R = 4 * rep.rescaled.delta_use;
  rep.source_radius = (delta + 1) * rep.R;
  rep.support.name = "pipeline_support";

  const MeasureFlow proto(r.chain, rep.rescaled.delta_use);
  const std::size_t n = m.size();
  std::vector<SuiteReport> parts(n);
  std::vector<int> radius(n, 0);
  parallel_for(n, [&](std::size_t ia) {
    MeasureFlow flow = proto.fresh();
    const auto a = static_cast<Vertex>(ia);
    const auto ra = m.row(a);
    for (Vertex x = 0; static_cast<std::size_t>(x) < n; ++x) {
      ++parts[ia].checked;
      for (const auto& [v, w] : flow.mu(a, x).atoms()) {
        radius[ia] = std::max<int>(radius[ia], ra[v]);
        if (ra[v] > rep.source_radius) {
          parts[ia].record_violation({{a, x, v}, {ra[v]}, "support point outside the source ball"});
          break;
        }
      }
    }
  });
  for (const auto& p : parts) rep.support.merge(p);
  rep.max_support_radius = *std::max_element(radius.begin(), radius.end());
  return rep;
}

}  // namespace lpcocycle
