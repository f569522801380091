#include "lpcocycle/measure.hpp"

#include <algorithm>

namespace lpcocycle {

SparseProbMeasure SparseProbMeasure::dirac(Vertex v) {
  SparseProbMeasure mu;
  mu.atoms_.emplace(v, Rational(1));
  return mu;
}

SparseProbMeasure SparseProbMeasure::uniform(std::span<const Vertex> A) {
  std::vector<Vertex> points(A.begin(), A.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.empty()) throw Error(ErrorCode::empty_set, "uniform measure on an empty set");
  SparseProbMeasure mu;
  const Rational w(1, static_cast<unsigned long>(points.size()));
  for (Vertex v : points) mu.atoms_.emplace_hint(mu.atoms_.end(), v, w);
  return mu;
}

SparseProbMeasure SparseProbMeasure::from_atoms(Atoms atoms) {
  Rational sum = 0;
  for (const auto& [v, w] : atoms) {
    if (sgn(w) <= 0) throw Error(ErrorCode::invalid_input, "nonpositive mass at vertex " + std::to_string(v));
    sum += w;
  }
  if (sum != 1) throw Error(ErrorCode::invalid_input, "masses sum to " + sum.get_str() + ", not 1");
  SparseProbMeasure mu;
  mu.atoms_ = std::move(atoms);
  return mu;
}

SparseProbMeasure SparseProbMeasure::mixture(std::span<const std::pair<Rational, const SparseProbMeasure*>> parts) {
  if (parts.size() == 1 && parts[0].first == 1) return *parts[0].second;
  SparseProbMeasure mu;
  for (const auto& [w, part] : parts) {
    if (sgn(w) == 0) continue;
    for (const auto& [v, m] : part->atoms_) mu.atoms_[v] += w * m;
  }
  return mu;
}

std::vector<Vertex> SparseProbMeasure::support() const {
  std::vector<Vertex> out;
  out.reserve(atoms_.size());
  for (const auto& [v, w] : atoms_) out.push_back(v);
  return out;
}

Rational SparseProbMeasure::mass(Vertex v) const {
  const auto it = atoms_.find(v);
  return it == atoms_.end() ? Rational(0) : it->second;
}

Rational SparseProbMeasure::total() const {
  Rational sum = 0;
  for (const auto& [v, w] : atoms_) sum += w;
  return sum;
}

SparseProbMeasure SparseProbMeasure::pushforward(const Isometry& g) const {
  SparseProbMeasure mu;
  for (const auto& [v, w] : atoms_) mu.atoms_[g.act(v)] += w;
  return mu;
}

Rational l1_distance(const SparseProbMeasure& mu, const SparseProbMeasure& nu) {
  Rational sum = 0;
  auto a = mu.atoms().begin();
  auto b = nu.atoms().begin();
  const auto a_end = mu.atoms().end();
  const auto b_end = nu.atoms().end();
  while (a != a_end || b != b_end) {
    if (b == b_end || (a != a_end && a->first < b->first)) {
      sum += a->second;
      ++a;
    } else if (a == a_end || b->first < a->first) {
      sum += b->second;
      ++b;
    } else {
      sum += abs(a->second - b->second);
      ++a;
      ++b;
    }
  }
  return sum;
}

bool supports_disjoint(const SparseProbMeasure& mu, const SparseProbMeasure& nu) {
  auto a = mu.atoms().begin();
  auto b = nu.atoms().begin();
  while (a != mu.atoms().end() && b != nu.atoms().end()) {
    if (a->first == b->first) return false;
    if (a->first < b->first) {
      ++a;
    } else {
      ++b;
    }
  }
  return true;
}

int support_distance(const MetricTable& m, const SparseProbMeasure& mu, const SparseProbMeasure& nu) {
  int best = 0;
  for (const auto& [u, wu] : mu.atoms()) {
    const auto ru = m.row(u);
    for (const auto& [v, wv] : nu.atoms()) best = std::max<int>(best, ru[static_cast<std::size_t>(v)]);
  }
  return best;
}

}  // namespace lpcocycle
