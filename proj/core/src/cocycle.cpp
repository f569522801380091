#include "lpcocycle/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpcocycle/parallel.hpp"

namespace lpcocycle {
namespace {

struct PerA {
  std::vector<std::pair<Vertex, Rational>> diff;  // (y, mu_o(a)(y) - mu_t(a)(y)), nonzero only
  bool disjoint = false;
};

// Runs body(flow, a, out) over the domain in contiguous chunks, one flow per
// chunk so caches are reused within a chunk but never shared across threads.
template <typename Body>
std::vector<PerA> over_domain(const MeasureFlow& proto, std::span<const Vertex> domain, Body body) {
  std::vector<PerA> out(domain.size());
  const std::size_t chunks = std::min<std::size_t>(domain.size(), std::max(1u, default_jobs()) * 4);
  parallel_for(chunks, [&](std::size_t c) {
    MeasureFlow flow = proto.fresh();
    const std::size_t lo = domain.size() * c / chunks;
    const std::size_t hi = domain.size() * (c + 1) / chunks;
    for (std::size_t i = lo; i < hi; ++i) body(flow, domain[i], out[i]);
  });
  return out;
}

std::vector<std::pair<Vertex, Rational>> difference(const SparseProbMeasure& mu, const SparseProbMeasure& nu) {
  std::map<Vertex, Rational> acc = mu.atoms();
  for (const auto& [v, w] : nu.atoms()) acc[v] -= w;
  std::vector<std::pair<Vertex, Rational>> out;
  for (auto& [v, w] : acc) {
    if (sgn(w) != 0) out.emplace_back(v, std::move(w));
  }
  return out;
}

PairField collect(std::span<const Vertex> domain, const std::vector<PerA>& rows, int R) {
  PairField f;
  f.R = R;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (const auto& [y, w] : rows[i].diff) f.entries.emplace_hint(f.entries.end(), std::make_pair(domain[i], y), w);
  }
  return f;
}

std::vector<Vertex> all_vertices(std::size_t n) {
  std::vector<Vertex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Vertex>(i);
  return v;
}

}  // namespace

Rational PairField::at(Vertex a, Vertex y) const {
  const auto it = entries.find({a, y});
  return it == entries.end() ? Rational(0) : it->second;
}

PairField xi_origin(const MeasureFlow& proto, Vertex o, std::span<const Vertex> domain) {
  const auto rows = over_domain(proto, domain, [&](MeasureFlow& flow, Vertex a, PerA& out) {
    for (const auto& [y, w] : flow.mu(a, o).atoms()) out.diff.emplace_back(y, w);
  });
  return collect(domain, rows, 4 * proto.delta());
}

CocycleField cocycle_between(const MeasureFlow& proto, Vertex o, Vertex target, std::span<const Vertex> domain,
                             std::string label) {
  const auto rows = over_domain(proto, domain, [&](MeasureFlow& flow, Vertex a, PerA& out) {
    out.diff = difference(flow.mu(a, o), flow.mu(a, target));
  });
  return {collect(domain, rows, 4 * proto.delta()), o, target, std::move(label)};
}

CocycleField cocycle_c(const MeasureFlow& proto, Vertex o, const Isometry& g, std::span<const Vertex> domain) {
  return cocycle_between(proto, o, g.act(o), domain, g.label());
}

CocycleField tree_cocycle(const MetricTable& m, Vertex o, Vertex target, std::span<const Vertex> domain,
                          std::string label) {
  CocycleField c;
  c.field.R = 1;
  c.base = o;
  c.target = target;
  c.label = std::move(label);
  for (Vertex a : domain) {
    for (auto& [y, w] : difference(tree_mu(m, a, o), tree_mu(m, a, target))) c.field.entries.emplace(std::make_pair(a, y), w);
  }
  return c;
}

double lp_norm(const PairField& f, double p) {
  if (std::isinf(p)) return linf_norm(f).get_d();
  if (p == 1.0) return l1_norm(f).get_d();
  double sum = 0.0;
  for (const auto& [k, w] : f.entries) sum += std::pow(std::fabs(w.get_d()), p);
  return std::pow(sum, 1.0 / p);
}

Rational l1_norm(const PairField& f) {
  Rational sum = 0;
  for (const auto& [k, w] : f.entries) sum += abs(w);
  return sum;
}

Rational linf_norm(const PairField& f) {
  Rational best = 0;
  for (const auto& [k, w] : f.entries) best = std::max<Rational>(best, abs(w));
  return best;
}

double row_lp_norm(const PairField& f, double p) {
  std::vector<double> rows;
  Vertex current = -1;
  for (const auto& [k, w] : f.entries) {
    if (rows.empty() || k.first != current) {
      rows.push_back(0.0);
      current = k.first;
    }
    rows.back() += std::fabs(w.get_d());
  }
  if (std::isinf(p)) return rows.empty() ? 0.0 : *std::max_element(rows.begin(), rows.end());
  double sum = 0.0;
  for (double r : rows) sum += std::pow(r, p);
  return std::pow(sum, 1.0 / p);
}

SuiteReport check_field(const MetricTable& m, const PairField& f) {
  SuiteReport rep;
  rep.name = "cocycle_field";
  auto it = f.entries.begin();
  while (it != f.entries.end()) {
    const Vertex a = it->first.first;
    Rational row = 0;
    for (; it != f.entries.end() && it->first.first == a; ++it) {
      const Vertex y = it->first.second;
      row += it->second;
      ++rep.checked;
      if (m(a, y) > f.R) {
        rep.record_violation({{a, y}, {m(a, y)}, "nonzero entry beyond R = " + std::to_string(f.R)});
      }
    }
    ++rep.checked;
    if (sgn(row) != 0) rep.record_violation({{a}, {}, "row sum is " + row.get_str()});
  }
  return rep;
}

LinfCocycle linf_word_cocycle(const MetricTable& m, Vertex o, Vertex target) {
  LinfCocycle c;
  const auto ro = m.row(o);
  const auto rt = m.row(target);
  c.values.resize(ro.size());
  for (std::size_t x = 0; x < ro.size(); ++x) {
    c.values[x] = static_cast<int>(ro[x]) - static_cast<int>(rt[x]);
    c.norm = std::max(c.norm, std::abs(c.values[x]));
  }
  return c;
}

LinfCocycle linf_word_cocycle(const MetricTable& m, Vertex o, const Isometry& g) {
  return linf_word_cocycle(m, o, g.act(o));
}

SuiteReport check_cocycle_identity(const MeasureFlow& proto, Vertex o, const Isometry& g1, const Isometry& g2) {
  if (!g1.is_total() || !g2.is_total()) {
    throw Error(ErrorCode::out_of_domain, "the cocycle identity check needs total isometries");
  }
  const auto domain = all_vertices(proto.metric().size());
  const Isometry g12 = compose(g1, g2);
  const PairField c1 = cocycle_c(proto, o, g1, domain).field;
  const PairField c2 = cocycle_c(proto, o, g2, domain).field;
  const PairField c12 = cocycle_c(proto, o, g12, domain).field;

  std::map<std::pair<Vertex, Vertex>, Rational> rhs = c1.entries;
  for (const auto& [k, w] : c2.entries) rhs[{g1(k.first), g1(k.second)}] += w;
  std::map<std::pair<Vertex, Vertex>, Rational> diff = rhs;
  for (const auto& [k, w] : c12.entries) diff[k] -= w;

  SuiteReport rep;
  rep.name = "cocycle_identity";
  for (const auto& [k, w] : diff) {
    ++rep.checked;
    if (sgn(w) != 0) {
      rep.record_violation({{k.first, k.second}, {}, "c(g1 g2) - c(g1) - g1.c(g2) = " + w.get_str()});
    }
  }
  return rep;
}

std::vector<Mover> generator_power_movers(const Isometry& g, Vertex o, int max_k, std::span<const Vertex> allowed) {
  std::vector<Mover> out;
  Vertex cur = o;
  const std::string base = g.label().empty() ? "g" : g.label();
  for (int k = 1; k <= max_k; ++k) {
    if (!g.defined(cur)) break;
    cur = g(cur);
    if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), cur) == allowed.end()) break;
    out.push_back({base + "^" + std::to_string(k), cur});
  }
  return out;
}

GrowthReport growth_report(const MeasureFlow& proto, std::int64_t C, Vertex o, std::span<const Mover> movers,
                           std::span<const Vertex> domain, const GrowthOptions& options) {
  const MetricTable& m = proto.metric();
  const int delta = proto.delta();
  GrowthReport rep;
  rep.origin = o;
  rep.delta = delta;
  rep.C = C;
  rep.ps = options.ps;
  const DecayConstants k = DecayConstants::derive(C, delta);
  rep.eps_ann = k.eps_ann;
  rep.eps_dist = k.eps_dist;

  for (const Mover& mv : movers) {
    const auto rows = over_domain(proto, domain, [&](MeasureFlow& flow, Vertex a, PerA& out) {
      const auto& mu_o = flow.mu(a, o);
      const auto& mu_t = flow.mu(a, mv.target);
      out.diff = difference(mu_o, mu_t);
      out.disjoint = supports_disjoint(mu_o, mu_t);
    });
    const PairField f = collect(domain, rows, 4 * delta);
    GrowthRow row;
    row.label = mv.label;
    row.D = m(o, mv.target);
    for (double p : options.ps) row.lp.push_back(lp_norm(f, p));
    row.l1 = l1_norm(f);
    row.disjoint_count = static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const PerA& r) { return r.disjoint; }));
    row.linf_reference = linf_word_cocycle(m, o, mv.target).norm;
    if (options.per_a) {
      auto& dump = rep.per_a.emplace_back();
      for (std::size_t i = 0; i < domain.size(); ++i) {
        if (rows[i].diff.empty()) continue;
        Rational s = 0;
        for (const auto& [y, w] : rows[i].diff) s += abs(w);
        dump.emplace_back(domain[i], s);
      }
    }
    if (row.D >= 8 * delta) {
      const double ratio = static_cast<double>(row.disjoint_count) / row.D;
      if (!rep.eta_hat || ratio < *rep.eta_hat) rep.eta_hat = ratio;
    }
    rep.rows.push_back(std::move(row));
  }

  // Least-squares slope of ln |S(o, r)| against r.
  const auto ro = m.row(o);
  const int ecc = *std::max_element(ro.begin(), ro.end());
  const int top = options.fit_radius > 0 ? std::min(options.fit_radius, ecc) : ecc;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(ecc) + 1, 0);
  for (auto d : ro) ++counts[d];
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int r = 1; r <= top; ++r) {
    rep.sphere_sizes.emplace_back(r, counts[static_cast<std::size_t>(r)]);
    const double y = std::log(static_cast<double>(counts[static_cast<std::size_t>(r)]));
    sx += r;
    sy += y;
    sxx += static_cast<double>(r) * r;
    sxy += r * y;
  }
  const double np = static_cast<double>(rep.sphere_sizes.size());
  rep.h = np >= 2 ? (np * sxy - sx * sy) / (np * sxx - sx * sx) : 0.0;
  rep.p_min_estimate = rep.h / rep.eps_dist;
  return rep;
}

}  // namespace lpcocycle
