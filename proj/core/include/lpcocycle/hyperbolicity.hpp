#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lpcocycle/metric.hpp"
#include "lpcocycle/report.hpp"

namespace lpcocycle {

using Quadruple = std::array<Vertex, 4>;

/// d(x1,x4) + d(x2,x3) - max(d(x1,x2) + d(x3,x4), d(x1,x3) + d(x2,x4)), unclamped.
int four_point_defect(const MetricTable& m, Vertex x1, Vertex x2, Vertex x3, Vertex x4);

struct DeltaResult {
  int delta_min = 0;
  /// Lexicographically smallest ordered quadruple attaining delta_min.
  Quadruple witness{0, 0, 0, 0};
};

/// Minimal four-point constant: the maximum defect over all ordered quadruples,
/// clamped below at 0.
///
/// Exact. Trees short-circuit to 0. Otherwise pairs are scanned by decreasing
/// distance and the scan stops once 2 * d(pair) cannot beat the current best,
/// since the defect of a quadruple never exceeds twice the shorter diagonal.
DeltaResult four_point_delta(const MetricTable& m);

/// max over x of |B(x, r)|.
int local_finiteness_K(const FiniteGraph& g, int r);
int local_finiteness_K(const MetricTable& m, int r);

/// Support cardinality bound C(delta, K) = max_v |B(v, 2 delta)|.
std::int64_t support_bound_C(const MetricTable& m, int delta);

/// -ln(1 - 1/C); +inf when C == 1.
double annulus_rate(std::int64_t C);

struct HyperbolicityReport {
  int delta_min = 0;
  Quadruple witness{0, 0, 0, 0};
  int delta_use = 1;  // max(1, delta_min)
  int K_1 = 1;        // max |B(x, 1)|
  std::int64_t C = 1;
  double eps_ann = 0.0;
};

HyperbolicityReport hyperbolicity_report(const MetricTable& m);

struct WeakGeodesicResult {
  bool ok = true;
  Vertex x = 0;
  Vertex y = 0;
  int s = 0;
};

/// Checks: for all x, y and integer s in [0, d(x,y) + delta] there is z with
/// d(x,z) <= s and d(z,y) <= d(x,y) - s + delta. Reports the first failing
/// (x, y, s) in (x, y, s) order.
WeakGeodesicResult weakly_geodesic_check(const MetricTable& m, int delta);

/// Equal-sphere points of an alpha-geodesic set are alpha + delta close.
LemmaResult check_lemma_3_3(const MetricTable& m, Vertex a, Vertex x, Vertex y, Vertex y2, int alpha, int delta);

/// Nested near-geodesic points stay (beta + delta)-geodesic.
LemmaResult check_lemma_3_4(const MetricTable& m, Vertex a, Vertex x, Vertex y, Vertex z, int alpha, int beta,
                            int delta);

/// eps-geod(x, a) and eps-geod(x', a) meet inside B(a, 3 eps / 2) when a is
/// eps-geodesic between x and x'. Holds in any metric space.
LemmaResult check_lemma_3_5(const MetricTable& m, Vertex a, Vertex x, Vertex x2, int eps);

/// Exhaustive scans over every admissible tuple whose free endpoints lie in
/// region, for all integer parameters up to the given maxima. Each admissible
/// (tuple, parameter) combination counts once in `checked`.
SuiteReport suite_lemma_3_3(const MetricTable& m, std::span<const Vertex> region, int delta, int alpha_max);
SuiteReport suite_lemma_3_4(const MetricTable& m, std::span<const Vertex> region, int delta, int alpha_max,
                            int beta_max);
SuiteReport suite_lemma_3_5(const MetricTable& m, std::span<const Vertex> region, int eps_max);

/// Triangle inequality over all triples; on graph-backed tables also checks
/// that every distance k > 0 is realised by a neighbour at distance k - 1.
SuiteReport check_metric_axioms(const MetricTable& m);

}  // namespace lpcocycle
