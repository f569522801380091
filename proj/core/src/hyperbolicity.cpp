#include "lpcocycle/hyperbolicity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include "lpcocycle/parallel.hpp"

namespace lpcocycle {
namespace {

std::string tuple_string(std::initializer_list<Vertex> vs) {
  std::string s = "(";
  for (Vertex v : vs) {
    if (s.size() > 1) s += ", ";
    s += std::to_string(v);
  }
  return s + ")";
}

// Per-index partial reports merged in index order, so witnesses are
// deterministic whatever the scheduling.
SuiteReport merge_all(std::string name, std::vector<SuiteReport>& parts) {
  SuiteReport total;
  total.name = std::move(name);
  for (auto& p : parts) total.merge(p);
  return total;
}

}  // namespace

int four_point_defect(const MetricTable& m, Vertex x1, Vertex x2, Vertex x3, Vertex x4) {
  return m(x1, x4) + m(x2, x3) - std::max(m(x1, x2) + m(x3, x4), m(x1, x3) + m(x2, x4));
}

DeltaResult four_point_delta(const MetricTable& m) {
  const std::size_t n = m.size();
  DeltaResult result;
  if (n < 2) return result;
  if (const FiniteGraph* g = m.graph(); g != nullptr && g->is_tree()) return result;

  struct Diagonal {
    Vertex x, y;
    int d;
  };
  std::vector<Diagonal> diagonals;
  diagonals.reserve(n * (n - 1) / 2);
  for (Vertex x = 0; static_cast<std::size_t>(x) < n; ++x) {
    const auto rx = m.row(x);
    for (std::size_t y = static_cast<std::size_t>(x) + 1; y < n; ++y) {
      diagonals.push_back({x, static_cast<Vertex>(y), rx[y]});
    }
  }
  std::stable_sort(diagonals.begin(), diagonals.end(),
                   [](const Diagonal& a, const Diagonal& b) { return a.d > b.d; });

  // For diagonals {x,y} and {u,v} the defect is at most 2 * min(d(x,y), d(u,v)),
  // so pairing each diagonal only with longer ones, and stopping once
  // 2 * d(x,y) cannot beat the running best, is exhaustive.
  std::atomic<int> best{0};
  parallel_for(diagonals.size(), [&](std::size_t i) {
    const Diagonal di = diagonals[i];
    int local = best.load(std::memory_order_relaxed);
    if (2 * di.d <= local) return;
    const auto rx = m.row(di.x);
    const auto ry = m.row(di.y);
    for (std::size_t j = 0; j < i; ++j) {
      const Diagonal& dj = diagonals[j];
      const int defect = di.d + dj.d - std::max(rx[dj.x] + ry[dj.y], rx[dj.y] + ry[dj.x]);
      if (defect > local) local = defect;
    }
    int seen = best.load(std::memory_order_relaxed);
    while (local > seen && !best.compare_exchange_weak(seen, local, std::memory_order_relaxed)) {
    }
  });
  result.delta_min = best.load();
  if (result.delta_min == 0) return result;  // (0,0,0,0) has defect 0

  // Lexicographically first ordered quadruple attaining the maximum.
  const int target = result.delta_min;
  for (Vertex x1 = 0; static_cast<std::size_t>(x1) < n; ++x1) {
    const auto r1 = m.row(x1);
    for (Vertex x2 = 0; static_cast<std::size_t>(x2) < n; ++x2) {
      const auto r2 = m.row(x2);
      for (Vertex x3 = 0; static_cast<std::size_t>(x3) < n; ++x3) {
        if (2 * r2[x3] < target) continue;
        const auto r3 = m.row(x3);
        for (Vertex x4 = 0; static_cast<std::size_t>(x4) < n; ++x4) {
          if (2 * r1[x4] < target) continue;
          const int defect = r1[x4] + r2[x3] - std::max(r1[x2] + r3[x4], r1[x3] + r2[x4]);
          if (defect == target) {
            result.witness = {x1, x2, x3, x4};
            return result;
          }
        }
      }
    }
  }
  throw Error(ErrorCode::internal, "four-point witness scan found no quadruple attaining the maximum");
}

int local_finiteness_K(const FiniteGraph& g, int r) {
  if (r < 0) throw Error(ErrorCode::invalid_input, "ball radius must be nonnegative");
  std::vector<int> sizes(g.size());
  parallel_for(g.size(), [&](std::size_t v) {
    sizes[v] = static_cast<int>(local_ball(g, static_cast<Vertex>(v), r).size());
  });
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

int local_finiteness_K(const MetricTable& m, int r) {
  if (const FiniteGraph* g = m.graph()) return local_finiteness_K(*g, r);
  if (r < 0) throw Error(ErrorCode::invalid_input, "ball radius must be nonnegative");
  int best = 0;
  for (Vertex v = 0; static_cast<std::size_t>(v) < m.size(); ++v) {
    best = std::max(best, static_cast<int>(ball(m, v, r).size()));
  }
  return best;
}

std::int64_t support_bound_C(const MetricTable& m, int delta) { return local_finiteness_K(m, 2 * delta); }

double annulus_rate(std::int64_t C) {
  if (C <= 1) return std::numeric_limits<double>::infinity();
  return -std::log1p(-1.0 / static_cast<double>(C));
}

HyperbolicityReport hyperbolicity_report(const MetricTable& m) {
  HyperbolicityReport r;
  const DeltaResult d = four_point_delta(m);
  r.delta_min = d.delta_min;
  r.witness = d.witness;
  r.delta_use = std::max(1, d.delta_min);
  r.K_1 = local_finiteness_K(m, 1);
  r.C = support_bound_C(m, r.delta_use);
  r.eps_ann = annulus_rate(r.C);
  return r;
}

WeakGeodesicResult weakly_geodesic_check(const MetricTable& m, int delta) {
  if (delta < 0) throw Error(ErrorCode::invalid_input, "delta must be nonnegative");
  const std::size_t n = m.size();
  std::vector<int> best;
  for (Vertex x = 0; static_cast<std::size_t>(x) < n; ++x) {
    const auto rx = m.row(x);
    const int ecc = *std::max_element(rx.begin(), rx.end());
    for (Vertex y = x + 1; static_cast<std::size_t>(y) < n; ++y) {
      const auto ry = m.row(y);
      // best[t] = min d(z, y) over z with d(x, z) <= t.
      best.assign(static_cast<std::size_t>(ecc) + 1, std::numeric_limits<int>::max());
      for (std::size_t z = 0; z < n; ++z) best[rx[z]] = std::min<int>(best[rx[z]], ry[z]);
      for (std::size_t t = 1; t < best.size(); ++t) best[t] = std::min(best[t], best[t - 1]);
      const int d = rx[static_cast<std::size_t>(y)];
      for (int s = 0; s <= d + delta; ++s) {
        if (best[static_cast<std::size_t>(std::min(s, ecc))] > d - s + delta) return {false, x, y, s};
      }
    }
  }
  return {};
}

LemmaResult check_lemma_3_3(const MetricTable& m, Vertex a, Vertex x, Vertex y, Vertex y2, int alpha, int delta) {
  if (m(a, y) != m(a, y2)) return unmet("d(a, y) != d(a, y')");
  if (geodesic_excess(m, a, y, x) > alpha || geodesic_excess(m, a, y2, x) > alpha) {
    return unmet("y or y' is not alpha-geodesic between a and x");
  }
  const int d = m(y, y2);
  if (d > alpha + delta) {
    return violated("d(y, y') = " + std::to_string(d) + " > alpha + delta = " + std::to_string(alpha + delta));
  }
  return holds();
}

LemmaResult check_lemma_3_4(const MetricTable& m, Vertex a, Vertex x, Vertex y, Vertex z, int alpha, int beta,
                            int delta) {
  if (geodesic_excess(m, a, y, x) > alpha) return unmet("y is not alpha-geodesic between a and x");
  if (geodesic_excess(m, a, z, y) > beta) return unmet("z is not beta-geodesic between a and y");
  if (2 * m(y, z) < alpha + beta) return unmet("d(y, z) < (alpha + beta) / 2");
  const int excess = geodesic_excess(m, a, z, x);
  if (excess > beta + delta) {
    return violated("z has excess " + std::to_string(excess) + " over (a, x), above beta + delta = " +
                    std::to_string(beta + delta));
  }
  return holds();
}

LemmaResult check_lemma_3_5(const MetricTable& m, Vertex a, Vertex x, Vertex x2, int eps) {
  if (geodesic_excess(m, x, a, x2) > eps) return unmet("a is not eps-geodesic between x and x'");
  const auto ra = m.row(a);
  const auto rx = m.row(x);
  const auto rx2 = m.row(x2);
  const int dxa = rx[static_cast<std::size_t>(a)];
  const int dx2a = rx2[static_cast<std::size_t>(a)];
  for (std::size_t y = 0; y < ra.size(); ++y) {
    if (rx[y] + ra[y] > dxa + eps || rx2[y] + ra[y] > dx2a + eps) continue;
    if (2 * ra[y] > 3 * eps) {
      return violated("vertex " + std::to_string(y) + " of the intersection lies at distance " +
                      std::to_string(ra[y]) + " from a");
    }
  }
  return holds();
}

SuiteReport suite_lemma_3_3(const MetricTable& m, std::span<const Vertex> region, int delta, int alpha_max) {
  const std::size_t r = region.size();
  std::vector<SuiteReport> parts(r);
  parallel_for(r, [&](std::size_t ia) {
    SuiteReport& out = parts[ia];
    const Vertex a = region[ia];
    std::vector<std::vector<std::pair<Vertex, int>>> by_sphere;  // (y, excess) grouped by d(a, y)
    for (Vertex x : region) {
      const auto rx = m.row(x);
      const int dax = m(a, x);
      by_sphere.assign(static_cast<std::size_t>(dax + alpha_max) + 1, {});
      for (const Reached& y : eps_geod_local(m, a, x, alpha_max)) {
        by_sphere[static_cast<std::size_t>(y.depth)].emplace_back(y.vertex, y.depth + rx[y.vertex] - dax);
      }
      for (const auto& group : by_sphere) {
        for (std::size_t i = 0; i < group.size(); ++i) {
          const auto [y, ey] = group[i];
          const auto ry = m.row(y);
          for (std::size_t j = i; j < group.size(); ++j) {
            const auto [y2, ey2] = group[j];
            const std::uint64_t mult = i == j ? 1 : 2;  // (y, y') and (y', y)
            const int lo = std::max(ey, ey2);
            out.checked += mult * static_cast<std::uint64_t>(alpha_max - lo + 1);
            out.precondition_unmet += mult * static_cast<std::uint64_t>(lo);
            // Violated for alpha in [lo, d(y, y') - delta - 1].
            const int hi = std::min(alpha_max, ry[y2] - delta - 1);
            if (hi >= lo) {
              out.record_violation({{a, x, y, y2}, {lo, delta}, "d(y, y') = " + std::to_string(ry[y2])},
                                   mult * static_cast<std::uint64_t>(hi - lo + 1));
            }
          }
        }
      }
    }
  });
  return merge_all("lemma_3_3", parts);
}

SuiteReport suite_lemma_3_4(const MetricTable& m, std::span<const Vertex> region, int delta, int alpha_max,
                            int beta_max) {
  const std::size_t r = region.size();
  std::vector<SuiteReport> parts(r);
  parallel_for(r, [&](std::size_t ia) {
    SuiteReport& out = parts[ia];
    const Vertex a = region[ia];
    const auto ra = m.row(a);
    for (Vertex x : region) {
      const auto rx = m.row(x);
      const int dax = ra[static_cast<std::size_t>(x)];
      // Every admissible z is (alpha + beta)-geodesic between a and x.
      const auto zs = eps_geod_local(m, a, x, alpha_max + beta_max);
      for (const Reached& yr : zs) {
        const Vertex y = yr.vertex;
        const int ey = yr.depth + rx[y] - dax;
        if (ey > alpha_max) continue;
        const auto ry = m.row(y);
        const int day = yr.depth;
        for (const Reached& zr : zs) {
          const Vertex z = zr.vertex;
          const int fz = zr.depth + ry[z] - day;
          if (fz > beta_max) continue;
          const int gz = zr.depth + rx[z] - dax;
          const int dyz2 = 2 * ry[z];
          for (int alpha = ey; alpha <= alpha_max; ++alpha) {
            const int upper = std::min(beta_max, dyz2 - alpha);
            if (upper < fz) {
              out.precondition_unmet += static_cast<std::uint64_t>(beta_max - fz + 1);
              continue;
            }
            out.checked += static_cast<std::uint64_t>(upper - fz + 1);
            out.precondition_unmet += static_cast<std::uint64_t>(beta_max - upper);
            const int bad = std::min(upper, gz - delta - 1);
            if (bad >= fz) {
              out.record_violation({{a, x, y, z}, {alpha, fz, delta}, "excess of z over (a, x) = " + std::to_string(gz)},
                                   static_cast<std::uint64_t>(bad - fz + 1));
            }
          }
        }
      }
    }
  });
  return merge_all("lemma_3_4", parts);
}

SuiteReport suite_lemma_3_5(const MetricTable& m, std::span<const Vertex> region, int eps_max) {
  const std::size_t r = region.size();
  std::vector<SuiteReport> parts(r);
  parallel_for(r, [&](std::size_t ix) {
    SuiteReport& out = parts[ix];
    const Vertex x = region[ix];
    const auto rx = m.row(x);
    std::vector<char> bad(static_cast<std::size_t>(eps_max) + 1);
    for (Vertex x2 : region) {
      const auto rx2 = m.row(x2);
      const int dxx2 = rx[static_cast<std::size_t>(x2)];
      for (const Reached& ar : eps_geod_local(m, x, x2, eps_max)) {
        const Vertex a = ar.vertex;
        const int ea = ar.depth + rx2[a] - dxx2;
        out.checked += static_cast<std::uint64_t>(eps_max - ea + 1);
        out.precondition_unmet += static_cast<std::uint64_t>(ea);
        std::fill(bad.begin(), bad.end(), 0);
        const int dxa = ar.depth;
        const int dx2a = rx2[a];
        // y in eps-geod(a, x) ∩ eps-geod(a, x'); depth is d(a, y).
        for (const Reached& yr : eps_geod_local(m, a, x, eps_max)) {
          const Vertex y = yr.vertex;
          const int h1 = yr.depth + rx[y] - dxa;
          const int h2 = yr.depth + rx2[y] - dx2a;
          const int lo = std::max({ea, h1, h2});
          // 2 d(y, a) > 3 eps  <=>  eps <= (2 d(y, a) - 1) / 3
          const int hi = yr.depth == 0 ? -1 : std::min(eps_max, (2 * yr.depth - 1) / 3);
          for (int e = lo; e <= hi; ++e) bad[static_cast<std::size_t>(e)] = 1;
          if (lo <= hi && out.witnesses.size() < SuiteReport::kMaxWitnesses) {
            out.witnesses.push_back({{a, x, x2, y}, {lo}, "d(y, a) = " + std::to_string(yr.depth)});
          }
        }
        out.violations += static_cast<std::uint64_t>(std::count(bad.begin(), bad.end(), 1));
      }
    }
  });
  return merge_all("lemma_3_5", parts);
}

SuiteReport check_metric_axioms(const MetricTable& m) {
  const std::size_t n = m.size();
  std::vector<SuiteReport> parts(n);
  const FiniteGraph* g = m.graph();
  parallel_for(n, [&](std::size_t ix) {
    SuiteReport& out = parts[ix];
    const Vertex x = static_cast<Vertex>(ix);
    const auto rx = m.row(x);
    for (std::size_t y = 0; y < n; ++y) {
      const auto ry = m.row(static_cast<Vertex>(y));
      for (std::size_t z = 0; z < n; ++z) {
        ++out.checked;
        if (rx[z] > rx[y] + ry[z]) {
          out.record_violation({{x, static_cast<Vertex>(y), static_cast<Vertex>(z)},
                                {},
                                "triangle inequality fails: d(x,z) = " + std::to_string(rx[z]) + " > " +
                                    std::to_string(rx[y] + ry[z])});
        }
      }
      if (g == nullptr || rx[y] == 0) continue;
      ++out.checked;
      bool stepped = false;
      for (Vertex w : g->neighbors(x)) stepped = stepped || m(w, static_cast<Vertex>(y)) + 1 == rx[y];
      if (!stepped) {
        out.record_violation({{x, static_cast<Vertex>(y)}, {}, "no neighbour of x is one step closer to y " +
                                                                   tuple_string({x, static_cast<Vertex>(y)})});
      }
    }
  });
  return merge_all("metric_axioms", parts);
}

}  // namespace lpcocycle
