#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lpcocycle/isometry.hpp"
#include "lpcocycle/measure_flow.hpp"
#include "lpcocycle/report.hpp"

namespace lpcocycle {

/// Sparse exact function on ordered pairs (a, y); absent pairs are zero.
/// Keyed by vertex pairs rather than PairIndex slots, so large spaces never
/// materialise the full pair index.
struct PairField {
  int R = 0;  // every nonzero entry sits at d(a, y) <= R
  std::map<std::pair<Vertex, Vertex>, Rational> entries;

  Rational at(Vertex a, Vertex y) const;
};

/// c(g) = xi_o - xi_{g.o} restricted to a in the chosen domain.
struct CocycleField {
  PairField field;
  Vertex base = 0;    // o
  Vertex target = 0;  // g.o
  std::string label;
};

/// (a, y) -> mu_o(a)({y}) for a in domain.
PairField xi_origin(const MeasureFlow& flow, Vertex o, std::span<const Vertex> domain);

/// Entries mu_o(a)({y}) - mu_{target}(a)({y}) for a in domain.
CocycleField cocycle_between(const MeasureFlow& flow, Vertex o, Vertex target, std::span<const Vertex> domain,
                             std::string label = {});

/// Same with target = g.o; throws OutOfDomain when g is undefined at o.
CocycleField cocycle_c(const MeasureFlow& flow, Vertex o, const Isometry& g, std::span<const Vertex> domain);

/// The same construction with tree_mu in place of mu (R = 1).
CocycleField tree_cocycle(const MetricTable& m, Vertex o, Vertex target, std::span<const Vertex> domain,
                          std::string label = {});

/// (sum |entry|^p)^{1/p} in double precision; p = +inf gives the max.
double lp_norm(const PairField& f, double p);
Rational l1_norm(const PairField& f);
Rational linf_norm(const PairField& f);

/// (sum_a (sum_y |entry(a, y)|)^p)^{1/p}: the l^p(X; l^1) norm, l^p over the
/// first coordinate of the per-row l^1 mass. Agrees with lp_norm at p = 1 and
/// is within a factor |B(a, R)|^{1 - 1/p} of it otherwise.
double row_lp_norm(const PairField& f, double p);

/// Row sums vanish and nonzero entries stay within distance R.
SuiteReport check_field(const MetricTable& m, const PairField& f);

struct LinfCocycle {
  std::vector<int> values;  // d(o, x) - d(g.o, x), per vertex
  int norm = 0;
};

/// x -> d(o, x) - d(target, x) over the whole space, with its sup norm.
LinfCocycle linf_word_cocycle(const MetricTable& m, Vertex o, Vertex target);
LinfCocycle linf_word_cocycle(const MetricTable& m, Vertex o, const Isometry& g);

/// c(g1 g2) == c(g1) + g1.c(g2) entry by entry, where g1 acts on pairs
/// diagonally. Needs total isometries; the domain is the whole space.
SuiteReport check_cocycle_identity(const MeasureFlow& flow, Vertex o, const Isometry& g1, const Isometry& g2);

struct Mover {
  std::string label;
  Vertex target = 0;  // g.o
};

/// o, g o, g^2 o, ... for k = 1..max_k while g^k is defined at o and the
/// image stays in `allowed` (all vertices when empty).
std::vector<Mover> generator_power_movers(const Isometry& g, Vertex o, int max_k,
                                          std::span<const Vertex> allowed = {});

struct GrowthRow {
  std::string label;
  int D = 0;
  std::vector<double> lp;  // aligned with GrowthReport::ps
  Rational l1;
  int disjoint_count = 0;
  int linf_reference = 0;
};

struct GrowthReport {
  Vertex origin = 0;
  int delta = 1;
  std::int64_t C = 1;
  std::vector<double> ps;
  std::vector<GrowthRow> rows;
  std::vector<std::pair<int, std::int64_t>> sphere_sizes;  // (r, |S(o, r)|) used in the fit
  double h = 0.0;                                          // fitted sphere growth rate, nats per unit
  double eps_ann = 0.0;
  double eps_dist = 0.0;
  double p_min_estimate = 0.0;                             // h / eps_dist
  std::optional<double> eta_hat;                           // min disjoint_count / D over rows with D >= 8 delta
  /// Per mover, per a with mu_o(a) != mu_{g.o}(a): (a, ||.||_1), if requested.
  std::vector<std::vector<std::pair<Vertex, Rational>>> per_a;
};

struct GrowthOptions {
  std::vector<double> ps{1.0, 2.0};
  int fit_radius = 0;   // spheres 1..fit_radius around o; 0 means up to the eccentricity
  bool per_a = false;
};

/// Norms, disjoint counts and the l-infinity reference for every mover, with
/// a over `domain`, plus the sphere-growth fit and the derived p threshold.
GrowthReport growth_report(const MeasureFlow& flow, std::int64_t C, Vertex o, std::span<const Mover> movers,
                           std::span<const Vertex> domain, const GrowthOptions& options);

}  // namespace lpcocycle
