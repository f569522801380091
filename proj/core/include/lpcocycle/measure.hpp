#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "lpcocycle/isometry.hpp"
#include "lpcocycle/metric.hpp"

namespace lpcocycle {

/// Finitely supported probability measure with exact rational masses.
/// Every stored mass is positive and the masses sum to exactly 1.
class SparseProbMeasure {
 public:
  using Atoms = std::map<Vertex, Rational>;

  static SparseProbMeasure dirac(Vertex v);

  /// Mass 1/|A| on each point of A (duplicates ignored). Throws EmptySet.
  static SparseProbMeasure uniform(std::span<const Vertex> A);

  /// Throws invalid_input unless every mass is positive and they sum to 1.
  static SparseProbMeasure from_atoms(Atoms atoms);

  /// sum_i w_i * mu_i for nonnegative weights summing to 1.
  static SparseProbMeasure mixture(std::span<const std::pair<Rational, const SparseProbMeasure*>> parts);

  const Atoms& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  std::vector<Vertex> support() const;
  Rational mass(Vertex v) const;
  Rational total() const;
  bool is_dirac() const noexcept { return atoms_.size() == 1; }

  /// Image under g; throws OutOfDomain if g is undefined on the support.
  SparseProbMeasure pushforward(const Isometry& g) const;

  friend bool operator==(const SparseProbMeasure& a, const SparseProbMeasure& b) { return a.atoms_ == b.atoms_; }

 private:
  Atoms atoms_;
};

/// sum_v |mu(v) - nu(v)|, exact. 2 iff supports are disjoint.
Rational l1_distance(const SparseProbMeasure& mu, const SparseProbMeasure& nu);

bool supports_disjoint(const SparseProbMeasure& mu, const SparseProbMeasure& nu);

/// max d(u, v) over u in supp mu, v in supp nu.
int support_distance(const MetricTable& m, const SparseProbMeasure& mu, const SparseProbMeasure& nu);

}  // namespace lpcocycle
