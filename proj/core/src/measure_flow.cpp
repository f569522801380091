#include "lpcocycle/measure_flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lpcocycle {
namespace {

std::string vstr(Vertex v) { return std::to_string(v); }

int diameter(const MetricTable& m, const SparseProbMeasure& mu) { return support_distance(m, mu, mu); }

}  // namespace

Rational annulus_decay_bound(std::int64_t C, int n) {
  mpz_class num = 2;
  mpz_class den = 1;
  for (int i = 0; i < n; ++i) {
    num *= static_cast<long>(C - 1);
    den *= static_cast<long>(C);
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

AnnulusSchedule::AnnulusSchedule(int delta) : delta_(delta) {
  if (delta < 1) throw Error(ErrorCode::invalid_input, "annulus schedule needs delta >= 1");
}

std::int64_t AnnulusSchedule::delta_bar(int n) const {
  if (n < 0) throw Error(ErrorCode::invalid_input, "annulus index must be nonnegative");
  return (4 + 5 * static_cast<std::int64_t>(n)) * delta_;
}

int AnnulusSchedule::n_below(double t) const {
  if (!(t > 4.0 * delta_)) {
    throw Error(ErrorCode::no_valid_index, "no annulus index below t = " + std::to_string(t) +
                                               " (needs t > " + std::to_string(4 * delta_) + ")");
  }
  int n = 0;
  while (static_cast<double>(delta_bar(n + 1)) < t) ++n;
  return n;
}

DecayConstants DecayConstants::derive(std::int64_t C, int delta) {
  DecayConstants k;
  k.C = C;
  k.delta = delta;
  k.eps_ann = C <= 1 ? INFINITY : -std::log1p(-1.0 / static_cast<double>(C));
  k.eps_dist = k.eps_ann / (5.0 * delta);
  k.C_dist = 2.0 * std::exp(4.0 * k.eps_ann / 5.0) * std::exp(k.eps_dist * (4.0 * delta + 1.0));
  return k;
}

MeasureFlow::MeasureFlow(MetricTable m, int delta) : metric_(std::move(m)), schedule_(delta) {}

std::vector<Vertex> MeasureFlow::target_set(Vertex a, Vertex x) const {
  const int delta = schedule_.delta();
  const int d = metric_(x, a);
  if (d <= 4 * delta) return {x};
  const auto r = static_cast<int>(schedule_.delta_bar(schedule_.n_below(d)));
  const auto ra = metric_.row(a);
  std::vector<Vertex> out;
  // Points of delta-geod(x, a) on S(a, r) are at most d - r + delta from x.
  for (const Reached& z : eps_geod_local(metric_, x, a, delta, d - r + delta)) {
    if (ra[static_cast<std::size_t>(z.vertex)] == r) out.push_back(z.vertex);
  }
  if (out.empty()) {
    throw Error(ErrorCode::empty_target, "no point of S(a, " + std::to_string(r) + ") is delta-geodesic between x = " +
                                             vstr(x) + " and a = " + vstr(a) + "; the metric is not graph-realised");
  }
  std::sort(out.begin(), out.end());
  return out;
}

const SparseProbMeasure& MeasureFlow::step_dirac(Vertex a, Vertex x) {
  const auto k = key(a, x);
  if (auto it = step_cache_.find(k); it != step_cache_.end()) return it->second;
  const auto A = target_set(a, x);
  return step_cache_.emplace(k, SparseProbMeasure::uniform(A)).first->second;
}

SparseProbMeasure MeasureFlow::step(Vertex a, const SparseProbMeasure& mu) {
  std::vector<std::pair<Rational, const SparseProbMeasure*>> parts;
  parts.reserve(mu.size());
  for (const auto& [x, w] : mu.atoms()) parts.emplace_back(w, &step_dirac(a, x));
  return SparseProbMeasure::mixture(parts);
}

const SparseProbMeasure& MeasureFlow::mu(Vertex a, Vertex x) {
  const auto k = key(a, x);
  if (auto it = mu_cache_.find(k); it != mu_cache_.end()) return it->second;
  if (metric_(x, a) <= 4 * delta()) return mu_cache_.emplace(k, SparseProbMeasure::dirac(x)).first->second;
  // mu_x(a) = lim T^l delta_x = sum over y of T(delta_x)(y) mu_y(a), and each
  // y is strictly closer to a, so the recursion terminates.
  const SparseProbMeasure& first = step_dirac(a, x);
  std::vector<std::pair<Rational, const SparseProbMeasure*>> parts;
  parts.reserve(first.size());
  for (const auto& [y, w] : first.atoms()) parts.emplace_back(w, &mu(a, y));
  return mu_cache_.emplace(k, SparseProbMeasure::mixture(parts)).first->second;
}

std::vector<SparseProbMeasure> MeasureFlow::iterates(Vertex a, Vertex x) {
  const int d = metric_(x, a);
  const int limit = d <= 4 * delta() ? 1 : schedule_.n_below(d) + 2;
  std::vector<SparseProbMeasure> out{SparseProbMeasure::dirac(x)};
  while (true) {
    SparseProbMeasure next = step(a, out.back());
    if (next == out.back()) return out;
    if (static_cast<int>(out.size()) > limit) {
      throw Error(ErrorCode::internal, "T_a iterates from " + vstr(x) + " toward " + vstr(a) +
                                           " failed to become stationary");
    }
    out.push_back(std::move(next));
  }
}

void MeasureFlow::clear_cache() {
  step_cache_.clear();
  mu_cache_.clear();
}

SparseProbMeasure step_T(const MetricTable& m, const AnnulusSchedule& s, Vertex a, const SparseProbMeasure& mu) {
  MeasureFlow flow(m, s.delta());
  return flow.step(a, mu);
}

SparseProbMeasure mu(const MetricTable& m, const AnnulusSchedule& s, Vertex a, Vertex x) {
  MeasureFlow flow(m, s.delta());
  return flow.mu(a, x);
}

LemmaResult check_support(MeasureFlow& flow, Vertex a, Vertex x) {
  const MetricTable& m = flow.metric();
  const int delta = flow.delta();
  const int d = m(x, a);
  const auto ra = m.row(a);
  const auto rx = m.row(x);
  auto off_geodesic = [&](Vertex v) { return rx[v] + ra[v] > d + 2 * delta; };

  for (const auto& [v, w] : flow.mu(a, x).atoms()) {
    if (ra[v] > 4 * delta) return violated("mu has atom " + vstr(v) + " outside B(a, 4 delta)");
    if (off_geodesic(v)) return violated("mu has atom " + vstr(v) + " outside 2delta-geod(x, a)");
    if (d >= 4 * delta && ra[v] != 4 * delta) return violated("mu has atom " + vstr(v) + " off S(a, 4 delta)");
  }

  const auto its = flow.iterates(a, x);
  const int n = d > 4 * delta ? flow.schedule().n_below(d) : -1;
  if (static_cast<int>(its.size()) > n + 3) return violated("iterates took more than n + 2 steps to settle");
  for (std::size_t l = 0; l < its.size(); ++l) {
    for (const auto& [v, w] : its[l].atoms()) {
      if (off_geodesic(v)) {
        return violated("iterate " + std::to_string(l) + " has atom " + vstr(v) + " outside 2delta-geod(x, a)");
      }
      if (l >= 1 && static_cast<int>(l) <= n + 1) {
        const auto r = flow.schedule().delta_bar(n + 1 - static_cast<int>(l));
        if (ra[v] != r) {
          return violated("iterate " + std::to_string(l) + " has atom " + vstr(v) + " off S(a, " +
                          std::to_string(r) + ")");
        }
      }
    }
  }
  return holds();
}

DecayCheck check_decay_annulus(MeasureFlow& flow, const DecayConstants& k, Vertex a, Vertex x, Vertex x2) {
  const MetricTable& m = flow.metric();
  const int delta = flow.delta();
  DecayCheck out;
  out.form = DecayCheck::Form::annulus;
  const int d = m(a, x);
  if (d != m(a, x2) || m(x, x2) > 4 * delta || d < 4 * delta || d % delta != 0 || (d / delta - 4) % 5 != 0) {
    return out;
  }
  out.n = (d / delta - 4) / 5;
  out.l1 = l1_distance(flow.mu(a, x), flow.mu(a, x2));
  const Rational bound = annulus_decay_bound(k.C, out.n);
  out.bound = bound.get_d();
  out.verdict = out.l1 <= bound ? Verdict::holds : Verdict::violated;
  return out;
}

DecayCheck check_decay_neighbor(MeasureFlow& flow, const DecayConstants& k, Vertex a, Vertex x, Vertex x2) {
  const MetricTable& m = flow.metric();
  DecayCheck out;
  out.form = DecayCheck::Form::neighbor;
  if (m(x, x2) != 1) return out;
  out.n = m(x, a);
  out.l1 = l1_distance(flow.mu(a, x), flow.mu(a, x2));
  out.bound = k.C_dist * std::exp(-k.eps_dist * out.n);
  // The bound is irrational, so equality cannot occur; the slack only absorbs
  // rounding in exp().
  out.verdict = out.l1.get_d() <= out.bound * (1.0 + 1e-12) ? Verdict::holds : Verdict::violated;
  return out;
}

DecayCheck check_decay(MeasureFlow& flow, const DecayConstants& k, Vertex a, Vertex x, Vertex x2) {
  DecayCheck out = check_decay_annulus(flow, k, a, x, x2);
  if (out.verdict != Verdict::precondition_unmet) return out;
  return check_decay_neighbor(flow, k, a, x, x2);
}

LemmaResult check_lemma_4_5(MeasureFlow& flow, Vertex a, Vertex x, Vertex x2) {
  const MetricTable& m = flow.metric();
  const auto& s = flow.schedule();
  const int delta = flow.delta();
  if (m(x, x2) != 1) return unmet("x and x' are not neighbours");
  const int d1 = m(a, x);
  const int d2 = m(a, x2);
  const auto ra = m.row(a);

  auto on_sphere = [&](const SparseProbMeasure& mu, std::int64_t r) {
    for (const auto& [v, w] : mu.atoms()) {
      if (ra[v] != r) return false;
    }
    return true;
  };

  if (d1 > 4 * delta && d2 > 4 * delta && s.n_below(d1) == s.n_below(d2)) {
    const auto r = s.delta_bar(s.n_below(d1));
    const auto& t1 = flow.step_dirac(a, x);
    const auto& t2 = flow.step_dirac(a, x2);
    if (!on_sphere(t1, r) || !on_sphere(t2, r)) return violated("a one-step image leaves S(a, delta_bar(n))");
    const int gap = support_distance(m, t1, t2);
    if (gap > 4 * delta) return violated("supports are " + std::to_string(gap) + " apart, above 4 delta");
    return holds();
  }

  // Straddling an annulus boundary: x on S(a, delta_bar(n)), x' one further out.
  Vertex inner = x, outer = x2;
  if (d1 > d2) std::swap(inner, outer);
  const int din = std::min(d1, d2);
  if (std::max(d1, d2) != din + 1 || din < 4 * delta || din % delta != 0 || (din / delta - 4) % 5 != 0) {
    return unmet("x, x' neither share an annulus nor straddle a sphere delta_bar(n)");
  }
  const auto& t = flow.step_dirac(a, outer);
  if (!on_sphere(t, din)) return violated("T_a(delta_x') leaves S(a, delta_bar(n))");
  const int gap = support_distance(m, SparseProbMeasure::dirac(inner), t);
  if (gap > 4 * delta) return violated("supports are " + std::to_string(gap) + " apart, above 4 delta");
  return holds();
}

LemmaResult check_lemma_4_6(MeasureFlow& flow, std::int64_t C, Vertex a, Vertex x, Vertex x2) {
  const MetricTable& m = flow.metric();
  const int delta = flow.delta();
  const int d = m(a, x);
  if (d != m(a, x2)) return unmet("x and x' are on different spheres around a");
  if (m(x, x2) > 4 * delta) return unmet("d(x, x') > 4 delta");
  if (d % delta != 0 || d < 9 * delta || (d / delta - 4) % 5 != 0) return unmet("d(a, x) is not delta_bar(n), n >= 1");
  const int n = (d / delta - 4) / 5;
  const auto r = flow.schedule().delta_bar(n - 1);
  const auto ra = m.row(a);
  const auto& t1 = flow.step_dirac(a, x);
  const auto& t2 = flow.step_dirac(a, x2);
  for (const auto* t : {&t1, &t2}) {
    for (const auto& [v, w] : t->atoms()) {
      if (ra[v] != r) return violated("atom " + vstr(v) + " off S(a, delta_bar(n - 1))");
    }
    if (static_cast<std::int64_t>(t->size()) > C) {
      return violated("support of size " + std::to_string(t->size()) + " exceeds C = " + std::to_string(C));
    }
    const int diam = diameter(m, *t);
    if (diam > 2 * delta) return violated("support diameter " + std::to_string(diam) + " exceeds 2 delta");
  }
  const int gap = support_distance(m, t1, t2);
  if (gap > 3 * delta) return violated("supports are " + std::to_string(gap) + " apart, above 3 delta");
  if (supports_disjoint(t1, t2)) return violated("one-step supports do not intersect");
  return holds();
}

int disjoint_support_count(MeasureFlow& flow, Vertex x, Vertex x2, std::span<const Vertex> over) {
  int count = 0;
  for (Vertex a : over) {
    if (supports_disjoint(flow.mu(a, x), flow.mu(a, x2))) ++count;
  }
  return count;
}

SparseProbMeasure tree_mu(const MetricTable& m, Vertex a, Vertex x) {
  const FiniteGraph* g = m.graph();
  if (g == nullptr || !g->is_tree()) throw Error(ErrorCode::not_a_tree, "tree_mu needs the metric of a tree");
  if (x == a) return SparseProbMeasure::dirac(a);
  const auto rx = m.row(x);
  const int d = rx[static_cast<std::size_t>(a)];
  for (Vertex w : g->neighbors(a)) {
    if (rx[static_cast<std::size_t>(w)] == d - 1) return SparseProbMeasure::dirac(w);
  }
  throw Error(ErrorCode::internal, "no neighbour of a lies toward x");
}

}  // namespace lpcocycle
