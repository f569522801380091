#include "lpcocycle/measure_suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>

#include "lpcocycle/parallel.hpp"

namespace lpcocycle {
namespace {

SuiteReport merge_all(std::string name, const std::vector<SuiteReport>& parts) {
  SuiteReport total;
  total.name = std::move(name);
  for (const auto& p : parts) total.merge(p);
  return total;
}

void tally(SuiteReport& out, const LemmaResult& r, std::vector<Vertex> tuple, std::vector<std::int64_t> params = {}) {
  switch (r.verdict) {
    case Verdict::holds:
      ++out.checked;
      break;
    case Verdict::violated:
      ++out.checked;
      out.record_violation({std::move(tuple), std::move(params), r.detail});
      break;
    case Verdict::precondition_unmet:
      ++out.precondition_unmet;
      break;
  }
}

std::vector<char> membership(std::size_t n, std::span<const Vertex> region) {
  std::vector<char> in(n, 0);
  for (Vertex v : region) in[static_cast<std::size_t>(v)] = 1;
  return in;
}

// Neighbours of x that lie in the region (distance-1 points for explicit metrics).
std::vector<Vertex> region_neighbors(const MetricTable& m, Vertex x, const std::vector<char>& in) {
  std::vector<Vertex> out;
  if (const FiniteGraph* g = m.graph()) {
    for (Vertex w : g->neighbors(x)) {
      if (in[static_cast<std::size_t>(w)]) out.push_back(w);
    }
  } else {
    const auto rx = m.row(x);
    for (std::size_t w = 0; w < rx.size(); ++w) {
      if (rx[w] == 1 && in[w]) out.push_back(static_cast<Vertex>(w));
    }
  }
  return out;
}

// Region points on the spheres S(a, delta_bar(n)), keyed by n.
std::map<int, std::vector<Vertex>> annulus_spheres(const MeasureFlow& flow, Vertex a, std::span<const Vertex> region) {
  std::map<int, std::vector<Vertex>> out;
  const int delta = flow.delta();
  const auto ra = flow.metric().row(a);
  for (Vertex x : region) {
    const int d = ra[static_cast<std::size_t>(x)];
    if (d >= 4 * delta && d % delta == 0 && (d / delta - 4) % 5 == 0) out[(d / delta - 4) / 5].push_back(x);
  }
  return out;
}

template <typename Body>
SuiteReport per_base_point(std::string name, const MeasureFlow& proto, std::span<const Vertex> region, Body body) {
  std::vector<SuiteReport> parts(region.size());
  parallel_for(region.size(), [&](std::size_t i) {
    MeasureFlow flow = proto.fresh();
    body(flow, region[i], parts[i]);
  });
  return merge_all(std::move(name), parts);
}

}  // namespace

SuiteReport suite_support(const MeasureFlow& proto, std::span<const Vertex> region) {
  return per_base_point("theorem_i_support", proto, region, [&](MeasureFlow& flow, Vertex a, SuiteReport& out) {
    for (Vertex x : region) tally(out, check_support(flow, a, x), {a, x});
  });
}

SuiteReport suite_lemma_4_5(const MeasureFlow& proto, std::span<const Vertex> region) {
  const auto in = membership(proto.metric().size(), region);
  return per_base_point("lemma_4_5", proto, region, [&](MeasureFlow& flow, Vertex a, SuiteReport& out) {
    for (Vertex x : region) {
      for (Vertex x2 : region_neighbors(flow.metric(), x, in)) tally(out, check_lemma_4_5(flow, a, x, x2), {a, x, x2});
    }
  });
}

SuiteReport suite_lemma_4_6(const MeasureFlow& proto, std::span<const Vertex> region, std::int64_t C) {
  const int delta = proto.delta();
  return per_base_point("lemma_4_6", proto, region, [&](MeasureFlow& flow, Vertex a, SuiteReport& out) {
    for (const auto& [n, sphere] : annulus_spheres(flow, a, region)) {
      if (n < 1) continue;
      for (Vertex x : sphere) {
        for (Vertex x2 : sphere) {
          if (flow.metric()(x, x2) <= 4 * delta) tally(out, check_lemma_4_6(flow, C, a, x, x2), {a, x, x2}, {n});
        }
      }
    }
  });
}

SuiteReport suite_lemma_4_7(const MeasureFlow& proto, std::span<const Vertex> region, std::int64_t C) {
  const int delta = proto.delta();
  const DecayConstants k = DecayConstants::derive(C, delta);
  return per_base_point("lemma_4_7", proto, region, [&](MeasureFlow& flow, Vertex a, SuiteReport& out) {
    for (const auto& [n, sphere] : annulus_spheres(flow, a, region)) {
      for (Vertex x : sphere) {
        for (Vertex x2 : sphere) {
          if (flow.metric()(x, x2) > 4 * delta) continue;
          const DecayCheck c = check_decay_annulus(flow, k, a, x, x2);
          ++out.checked;
          if (c.verdict == Verdict::violated) {
            out.record_violation({{a, x, x2}, {n}, "l1 = " + c.l1.get_str() + " above " + std::to_string(c.bound)});
          }
        }
      }
    }
  });
}

SuiteReport suite_contraction(const MeasureFlow& proto, std::span<const Vertex> region, std::int64_t C) {
  const int delta = proto.delta();
  const Rational factor(C - 1, C);
  return per_base_point("contraction", proto, region, [&](MeasureFlow& flow, Vertex a, SuiteReport& out) {
    const MetricTable& m = flow.metric();
    for (const auto& [n, sphere] : annulus_spheres(flow, a, region)) {
      for (Vertex x : sphere) {
        for (Vertex x2 : sphere) {
          if (x == x2 || m(x, x2) > 4 * delta) continue;
          SparseProbMeasure mu = SparseProbMeasure::dirac(x);
          SparseProbMeasure nu = SparseProbMeasure::dirac(x2);
          for (int level = n; level >= 1; --level) {
            SparseProbMeasure tmu = flow.step(a, mu);
            SparseProbMeasure tnu = flow.step(a, nu);
            const bool applies = static_cast<std::int64_t>(mu.size()) <= C &&
                                 static_cast<std::int64_t>(nu.size()) <= C && support_distance(m, mu, nu) <= 4 * delta;
            if (!applies) {
              ++out.precondition_unmet;
            } else {
              ++out.checked;
              const Rational before = l1_distance(mu, nu);
              const Rational after = l1_distance(tmu, tnu);
              if (after > factor * before) {
                out.record_violation({{a, x, x2}, {n, level}, "l1 went from " + before.get_str() + " to " + after.get_str()});
              }
            }
            mu = std::move(tmu);
            nu = std::move(tnu);
          }
        }
      }
    }
  });
}

NeighborDecayReport suite_theorem_ii(const MeasureFlow& proto, std::span<const Vertex> region,
                                     const DecayConstants& k) {
  const auto in = membership(proto.metric().size(), region);
  std::vector<std::vector<double>> maxima(region.size());
  std::vector<SuiteReport> parts(region.size());
  parallel_for(region.size(), [&](std::size_t i) {
    MeasureFlow flow = proto.fresh();
    const Vertex a = region[i];
    auto& best = maxima[i];
    for (Vertex x : region) {
      for (Vertex x2 : region_neighbors(flow.metric(), x, in)) {
        const DecayCheck c = check_decay_neighbor(flow, k, a, x, x2);
        ++parts[i].checked;
        if (c.verdict == Verdict::violated) {
          parts[i].record_violation(
              {{a, x, x2}, {c.n}, "l1 = " + c.l1.get_str() + " above " + std::to_string(c.bound)});
        }
        if (best.size() <= static_cast<std::size_t>(c.n)) best.resize(static_cast<std::size_t>(c.n) + 1, 0.0);
        best[static_cast<std::size_t>(c.n)] = std::max(best[static_cast<std::size_t>(c.n)], c.l1.get_d());
      }
    }
  });

  NeighborDecayReport rep;
  rep.report = merge_all("theorem_ii_neighbor", parts);
  std::vector<double> best;
  for (const auto& b : maxima) {
    if (best.size() < b.size()) best.resize(b.size(), 0.0);
    for (std::size_t d = 0; d < b.size(); ++d) best[d] = std::max(best[d], b[d]);
  }
  std::vector<std::pair<double, double>> pts;
  for (std::size_t d = 0; d < best.size(); ++d) {
    rep.max_l1_by_distance.emplace_back(static_cast<int>(d), best[d]);
    if (static_cast<int>(d) > 4 * proto.delta() && best[d] > 0) pts.emplace_back(static_cast<double>(d), std::log(best[d]));
  }
  if (pts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double np = static_cast<double>(pts.size());
    rep.fitted_rate = -(np * sxy - sx * sy) / (np * sxx - sx * sx);
  }
  return rep;
}

DisjointnessReport suite_theorem_iii(const MeasureFlow& proto, std::span<const Vertex> region) {
  const int delta = proto.delta();
  const MetricTable& m = proto.metric();
  struct Pair {
    std::size_t i, j;
    int D;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < region.size(); ++i) {
    const auto ri = m.row(region[i]);
    for (std::size_t j = i + 1; j < region.size(); ++j) {
      const int D = ri[static_cast<std::size_t>(region[j])];
      if (D >= 8 * delta) pairs.push_back({i, j, D});
    }
  }
  std::vector<std::atomic<std::uint32_t>> counts(pairs.size());
  for (auto& c : counts) c.store(0, std::memory_order_relaxed);

  parallel_for(region.size(), [&](std::size_t ia) {
    MeasureFlow flow = proto.fresh();
    const Vertex a = region[ia];
    std::vector<const SparseProbMeasure*> mus(region.size());
    for (std::size_t i = 0; i < region.size(); ++i) mus[i] = &flow.mu(a, region[i]);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (supports_disjoint(*mus[pairs[p].i], *mus[pairs[p].j])) counts[p].fetch_add(1, std::memory_order_relaxed);
    }
  });

  DisjointnessReport rep;
  rep.report.name = "theorem_iii_disjoint";
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const int D = pairs[p].D;
    const auto count = static_cast<int>(counts[p].load());
    ++rep.report.checked;
    if (count < D + 1 - 8 * delta) {
      rep.report.record_violation({{region[pairs[p].i], region[pairs[p].j]},
                                   {D, count},
                                   "only " + std::to_string(count) + " disjoint supports, need " +
                                       std::to_string(D + 1 - 8 * delta)});
    }
    const double ratio = static_cast<double>(count) / D;
    if (!rep.eta_hat || ratio < *rep.eta_hat) rep.eta_hat = ratio;
  }
  return rep;
}

SuiteReport suite_equivariance(const MeasureFlow& proto, std::span<const Vertex> region,
                               std::span<const Isometry> isometries) {
  return per_base_point("equivariance", proto, region, [&](MeasureFlow& flow, Vertex a, SuiteReport& out) {
    for (const Isometry& g : isometries) {
      if (!g.is_total()) {
        out.precondition_unmet += region.size();
        continue;
      }
      const Vertex ga = g(a);
      for (Vertex x : region) {
        ++out.checked;
        if (!(flow.mu(ga, g(x)) == flow.mu(a, x).pushforward(g))) {
          out.record_violation({{a, x}, {}, "mu_{gx}(ga) differs from g.mu_x(a) for g = " + g.label()});
        }
      }
    }
    flow.clear_cache();
  });
}

std::vector<SingleStepRow> single_step_rows(MeasureFlow& flow, std::int64_t C, Vertex x, Vertex x2,
                                            std::span<const Vertex> as) {
  std::vector<SingleStepRow> rows;
  const int delta = flow.delta();
  for (Vertex a : as) {
    SingleStepRow row;
    row.a = a;
    row.d = flow.metric()(x, a);
    row.n = row.d > 4 * delta ? flow.schedule().n_below(row.d) : 0;
    row.one_step_l1 = l1_distance(flow.step_dirac(a, x), flow.step_dirac(a, x2));
    row.mu_l1 = l1_distance(flow.mu(a, x), flow.mu(a, x2));
    row.bound = annulus_decay_bound(C, row.n);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lpcocycle
