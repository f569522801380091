#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lpcocycle/hyperbolicity.hpp"
#include "lpcocycle/metric.hpp"
#include "lpcocycle/report.hpp"

namespace lpcocycle {

/// Chain metric d': the least number of steps of d-length at most delta + 1
/// joining two points, realised as the BFS metric of the step graph.
struct ChainRescaling {
  MetricTable source;
  int delta = 0;
  std::shared_ptr<const FiniteGraph> graph;  // edges: pairs with 0 < d <= delta + 1
  MetricTable chain;
};

/// Throws ChainDisconnected (naming an unreachable pair) when the steps do not
/// connect the space.
ChainRescaling chain_metric(const MetricTable& m, int delta);

struct Prop51Report {
  WeakGeodesicResult weak;        // precondition for d' <= d + 1
  std::uint64_t pairs = 0;
  std::uint64_t upper_violations = 0;  // d > (delta + 1) d'
  std::uint64_t lower_violations = 0;  // d' > d + 1
  bool lower_asserted = false;         // only when the source is weakly delta-geodesic
  double max_ratio = 0.0;              // max d / d' over distinct pairs
  int max_excess = 0;                  // max d' - d
  std::vector<std::string> witnesses;

  bool passed() const noexcept { return upper_violations == 0 && lower_violations == 0; }
};

/// d <= (delta + 1) d' always (triangle inequality); d' <= d + 1 whenever the
/// source is weakly delta-geodesic, which is checked first.
Prop51Report verify_prop_5_1(const ChainRescaling& r);

struct PipelineReport {
  HyperbolicityReport rescaled;
  int R = 0;              // 4 delta'_use on the rescaled space
  int source_radius = 0;  // (delta + 1) R
  int max_support_radius = 0;  // max source distance from a to supp mu_x(a)
  SuiteReport support;    // supp mu_x(a) inside the source ball B(a, source_radius)
};

/// Rescales, then runs the measure construction on (X, d') for every (x, a).
PipelineReport pipeline_theorem_5_2(const MetricTable& m, int delta);

}  // namespace lpcocycle
