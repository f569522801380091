#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpcocycle/error.hpp"

namespace lpcocycle {

enum class Verdict { holds, violated, precondition_unmet };

/// Outcome of one lemma predicate on one tuple.
struct LemmaResult {
  Verdict verdict = Verdict::holds;
  std::string detail;

  bool holds() const noexcept { return verdict == Verdict::holds; }
  bool violated() const noexcept { return verdict == Verdict::violated; }
};

inline LemmaResult holds() { return {}; }
inline LemmaResult violated(std::string detail) { return {Verdict::violated, std::move(detail)}; }
inline LemmaResult unmet(std::string detail) { return {Verdict::precondition_unmet, std::move(detail)}; }

/// A concrete counterexample: the vertex tuple plus the integer parameters
/// (alpha, beta, eps, n, ...) it was checked at.
struct Violation {
  std::vector<Vertex> tuple;
  std::vector<std::int64_t> params;
  std::string detail;
};

/// Tally of an exhaustive scan. Only the first kMaxWitnesses violations are kept.
struct SuiteReport {
  static constexpr std::size_t kMaxWitnesses = 16;

  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t precondition_unmet = 0;
  std::vector<Violation> witnesses;

  bool passed() const noexcept { return violations == 0; }

  void record_violation(Violation v, std::uint64_t count = 1) {
    violations += count;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(v));
  }

  /// Appends another partial tally; callers merge in index order so the kept
  /// witnesses are deterministic.
  void merge(const SuiteReport& other) {
    checked += other.checked;
    violations += other.violations;
    precondition_unmet += other.precondition_unmet;
    for (const auto& w : other.witnesses) {
      if (witnesses.size() >= kMaxWitnesses) break;
      witnesses.push_back(w);
    }
  }
};

}  // namespace lpcocycle
