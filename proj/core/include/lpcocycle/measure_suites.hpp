#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lpcocycle/isometry.hpp"
#include "lpcocycle/measure_flow.hpp"
#include "lpcocycle/report.hpp"

namespace lpcocycle {

// Exhaustive scans over base points in `region`. Each runs in parallel over a,
// with a fresh MeasureFlow per task, so memory stays bounded by one a at a time.

/// check_support for every (x, a) in region^2.
SuiteReport suite_support(const MeasureFlow& proto, std::span<const Vertex> region);

/// check_lemma_4_5 for every a and every neighbouring x, x' in the region.
SuiteReport suite_lemma_4_5(const MeasureFlow& proto, std::span<const Vertex> region);

/// check_lemma_4_6 for every a and x, x' in the region on a common sphere
/// delta_bar(n), n >= 1, with d(x, x') <= 4 delta.
SuiteReport suite_lemma_4_6(const MeasureFlow& proto, std::span<const Vertex> region, std::int64_t C);

/// Annulus-form decay bound on the same tuples (n >= 0).
SuiteReport suite_lemma_4_7(const MeasureFlow& proto, std::span<const Vertex> region, std::int64_t C);

/// ||T mu - T nu||_1 <= (1 - 1/C) ||mu - nu||_1 along the iterates of such
/// pairs, while the two measures share a sphere delta_bar(m), m >= 1, have at
/// most C atoms each and lie within 4 delta of each other.
SuiteReport suite_contraction(const MeasureFlow& proto, std::span<const Vertex> region, std::int64_t C);

struct NeighborDecayReport {
  SuiteReport report;
  /// max ||mu_x(a) - mu_x'(a)||_1 over neighbour pairs, by d(x, a).
  std::vector<std::pair<int, double>> max_l1_by_distance;
  /// Least-squares slope of -ln(max l1) against d over distances beyond 4
  /// delta with nonzero max; empty when fewer than two such points exist.
  std::optional<double> fitted_rate;
};

/// Neighbour-form decay bound for every a and neighbouring x, x' in the region.
NeighborDecayReport suite_theorem_ii(const MeasureFlow& proto, std::span<const Vertex> region,
                                     const DecayConstants& k);

struct DisjointnessReport {
  SuiteReport report;
  /// min over checked pairs of disjoint_count / d(x, x').
  std::optional<double> eta_hat;
};

/// disjoint_support_count(x, x') >= d(x, x') + 1 - 8 delta over a in the
/// region, for every pair x < x' in the region with d(x, x') >= 8 delta.
DisjointnessReport suite_theorem_iii(const MeasureFlow& proto, std::span<const Vertex> region);

/// mu_{gx}(ga) == g . mu_x(a) for every total isometry g and x, a in the
/// region. Partial isometries are skipped and counted as precondition_unmet.
SuiteReport suite_equivariance(const MeasureFlow& proto, std::span<const Vertex> region,
                               std::span<const Isometry> isometries);

/// One row of the single-step comparison between two neighbours.
struct SingleStepRow {
  Vertex a = 0;
  int d = 0;  // d(x, a)
  int n = 0;  // n_below(d)
  Rational one_step_l1;  // ||T_a delta_x - T_a delta_x'||_1
  Rational mu_l1;        // ||mu_x(a) - mu_x'(a)||_1
  Rational bound;        // 2 (1 - 1/C)^n
};

std::vector<SingleStepRow> single_step_rows(MeasureFlow& flow, std::int64_t C, Vertex x, Vertex x2,
                                            std::span<const Vertex> as);

}  // namespace lpcocycle
