#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "lpcocycle/measure.hpp"
#include "lpcocycle/metric.hpp"
#include "lpcocycle/report.hpp"

namespace lpcocycle {

/// Sphere radii (4 + 5n) delta onto which the flow pushes mass, one annulus
/// at a time.
class AnnulusSchedule {
 public:
  /// Throws invalid_input for delta < 1.
  explicit AnnulusSchedule(int delta);

  int delta() const noexcept { return delta_; }

  /// (4 + 5n) delta.
  std::int64_t delta_bar(int n) const;

  /// Largest n with delta_bar(n) < t. Throws NoValidIndex when t <= 4 delta.
  int n_below(double t) const;

 private:
  int delta_;
};

/// Decay constants the checkers compare against.
///
/// eps_ann = -ln(1 - 1/C) is the per-annulus contraction rate. Annuli are 5
/// delta wide, so per unit distance that is eps_dist = eps_ann / (5 delta);
/// C_dist = 2 e^{4 eps_ann / 5} e^{eps_dist (4 delta + 1)} absorbs the
/// innermost annulus and the one unaligned step between neighbours.
struct DecayConstants {
  std::int64_t C = 1;
  int delta = 1;
  double eps_ann = 0.0;
  double eps_dist = 0.0;
  double C_dist = 0.0;

  static DecayConstants derive(std::int64_t C, int delta);
};

/// The operator T_a and its stationary measures mu_x(a) on one metric space.
///
/// Caches step images of Diracs and the limits per (a, x). Not thread-safe:
/// parallel callers take one instance each via fresh(), which shares the
/// metric but starts with empty caches.
class MeasureFlow {
 public:
  /// The metric must be graph-realised for every target set to be nonempty.
  MeasureFlow(MetricTable m, int delta);

  MeasureFlow fresh() const { return MeasureFlow(metric_, schedule_.delta()); }

  const MetricTable& metric() const noexcept { return metric_; }
  const AnnulusSchedule& schedule() const noexcept { return schedule_; }
  int delta() const noexcept { return schedule_.delta(); }

  /// Support of T_a(delta_x): {x} when d(x, a) <= 4 delta, otherwise
  /// delta-geod(x, a) ∩ S(a, delta_bar(n_below(d(x, a)))), ascending.
  /// Throws EmptyTarget if that set is empty.
  std::vector<Vertex> target_set(Vertex a, Vertex x) const;

  const SparseProbMeasure& step_dirac(Vertex a, Vertex x);
  SparseProbMeasure step(Vertex a, const SparseProbMeasure& mu);

  /// mu_x(a): the exact fixpoint of T_a iterated from delta_x.
  const SparseProbMeasure& mu(Vertex a, Vertex x);

  /// delta_x, T_a delta_x, ... up to and including the first fixpoint.
  std::vector<SparseProbMeasure> iterates(Vertex a, Vertex x);

  void clear_cache();
  std::size_t cache_size() const noexcept { return step_cache_.size() + mu_cache_.size(); }

 private:
  static std::uint64_t key(Vertex a, Vertex x) noexcept {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(x);
  }

  MetricTable metric_;
  AnnulusSchedule schedule_;
  std::unordered_map<std::uint64_t, SparseProbMeasure> step_cache_;
  std::unordered_map<std::uint64_t, SparseProbMeasure> mu_cache_;
};

/// 2 (1 - 1/C)^n, exactly.
Rational annulus_decay_bound(std::int64_t C, int n);

/// Uncached one-shot forms.
SparseProbMeasure step_T(const MetricTable& m, const AnnulusSchedule& s, Vertex a, const SparseProbMeasure& mu);
SparseProbMeasure mu(const MetricTable& m, const AnnulusSchedule& s, Vertex a, Vertex x);

/// supp mu_x(a) ⊆ B(a, 4 delta) ∩ 2delta-geod(x, a), on S(a, 4 delta) when
/// d(x, a) >= 4 delta; every iterate stays in 2delta-geod(x, a) and the l-th
/// iterate sits on S(a, delta_bar(n + 1 - l)) for 1 <= l <= n + 1, where
/// n = n_below(d(x, a)).
LemmaResult check_support(MeasureFlow& flow, Vertex a, Vertex x);

struct DecayCheck {
  enum class Form { annulus, neighbor };

  Verdict verdict = Verdict::precondition_unmet;
  Form form = Form::annulus;
  int n = 0;          // annulus index (annulus form) or d(x, a) (neighbour form)
  Rational l1;        // ||mu_x(a) - mu_x'(a)||_1
  double bound = 0.0;
  bool ok() const noexcept { return verdict != Verdict::violated; }
};

/// Annulus form: d(a,x) = d(a,x') = delta_bar(n), d(x,x') <= 4 delta;
/// asserts l1 <= 2 (1 - 1/C)^n, compared exactly.
DecayCheck check_decay_annulus(MeasureFlow& flow, const DecayConstants& k, Vertex a, Vertex x, Vertex x2);

/// Neighbour form: d(x, x') = 1; asserts l1 <= C_dist e^{-eps_dist d(x, a)}.
DecayCheck check_decay_neighbor(MeasureFlow& flow, const DecayConstants& k, Vertex a, Vertex x, Vertex x2);

/// Annulus form when it applies, else the neighbour form, else unmet.
DecayCheck check_decay(MeasureFlow& flow, const DecayConstants& k, Vertex a, Vertex x, Vertex x2);

/// Neighbours x, x' either in one annulus (delta_bar(n), delta_bar(n+1)]
/// (both steps land on S(a, delta_bar(n)) within 4 delta of each other) or on
/// S(a, delta_bar(n)) and S(a, delta_bar(n) + 1) (delta_x against
/// T_a delta_x').
LemmaResult check_lemma_4_5(MeasureFlow& flow, Vertex a, Vertex x, Vertex x2);

/// x, x' on S(a, delta_bar(n)), n >= 1, d(x, x') <= 4 delta: both one-step
/// images live on S(a, delta_bar(n-1)), have at most C points and diameter
/// <= 2 delta, lie within 3 delta of each other, and overlap.
LemmaResult check_lemma_4_6(MeasureFlow& flow, std::int64_t C, Vertex a, Vertex x, Vertex x2);

/// Number of a in `over` with supp mu_x(a) ∩ supp mu_x'(a) empty.
int disjoint_support_count(MeasureFlow& flow, Vertex x, Vertex x2, std::span<const Vertex> over);

/// Tree shortcut: Dirac at the neighbour of a on the way to x (at a if x = a).
/// Throws NotATree unless the metric is a tree's.
SparseProbMeasure tree_mu(const MetricTable& m, Vertex a, Vertex x);

}  // namespace lpcocycle
