#include <algorithm>
#include <cmath>
#include <sstream>

#include "commands.hpp"
#include "inputs.hpp"
#include "report_json.hpp"

#include "lpcocycle/cocycle.hpp"
#include "lpcocycle/hyperbolicity.hpp"

namespace lpcocycle::cli {
namespace {

bool contains(std::span<const Vertex> sorted, Vertex v) { return std::binary_search(sorted.begin(), sorted.end(), v); }

// "name^k" or "name^k1..k2": powers of a named automorphism applied to the
// origin. Anything else names a vertex directly.
std::vector<Mover> parse_movers(const Input& in, const RunConfig& c, Vertex o, std::span<const Vertex> domain) {
  std::vector<Mover> out;
  auto admit = [&](Mover m) {
    if (!contains(domain, m.target)) {
      throw Error(ErrorCode::out_of_domain, "mover " + m.label + " lands outside the safe region");
    }
    out.push_back(std::move(m));
  };
  for (const std::string& item : c.movers) {
    const auto caret = item.find('^');
    if (caret == std::string::npos) {
      admit({item, resolve_vertex(in, item)});
      continue;
    }
    const std::string name = item.substr(0, caret);
    const std::string range = item.substr(caret + 1);
    int lo = 0, hi = 0;
    const auto dots = range.find("..");
    try {
      lo = std::stoi(range.substr(0, dots));
      hi = dots == std::string::npos ? lo : std::stoi(range.substr(dots + 2));
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_input, "bad power in mover '" + item + "'");
    }
    if (lo < 0 || hi < lo) throw Error(ErrorCode::invalid_input, "bad power range in mover '" + item + "'");
    const auto& autos = in.space.automorphisms;
    const auto g = std::find_if(autos.begin(), autos.end(), [&](const Isometry& a) { return a.label() == name; });
    if (g == autos.end()) throw Error(ErrorCode::invalid_input, "no automorphism named '" + name + "'");
    Vertex cur = o;
    for (int k = 0; k <= hi; ++k) {
      if (k > 0) {
        if (!g->defined(cur)) {
          throw Error(ErrorCode::out_of_domain, name + "^" + std::to_string(k) + " is undefined at the origin");
        }
        cur = (*g)(cur);
      }
      if (k >= lo) admit({name + "^" + std::to_string(k), cur});
    }
  }
  if (out.empty()) throw Error(ErrorCode::invalid_input, "cocycle-growth needs --movers");
  return out;
}

// The tree construction: same report shape, rows from tree_cocycle.
void tree_rows(const MetricTable& m, Vertex o, std::span<const Mover> movers, std::span<const Vertex> domain,
               const GrowthOptions& opts, GrowthReport& rep, std::vector<std::vector<double>>& row_lp) {
  for (const Mover& mv : movers) {
    const CocycleField c = tree_cocycle(m, o, mv.target, domain, mv.label);
    GrowthRow row;
    row.label = mv.label;
    row.D = m(o, mv.target);
    for (double p : opts.ps) row.lp.push_back(lp_norm(c.field, p));
    row.l1 = l1_norm(c.field);
    for (Vertex a : domain) row.disjoint_count += tree_mu(m, a, o) == tree_mu(m, a, mv.target) ? 0 : 1;
    row.linf_reference = linf_word_cocycle(m, o, mv.target).norm;
    auto& r = row_lp.emplace_back();
    for (double p : opts.ps) r.push_back(row_lp_norm(c.field, p));
    if (opts.per_a) {
      auto& dump = rep.per_a.emplace_back();
      auto it = c.field.entries.begin();
      while (it != c.field.entries.end()) {
        const Vertex a = it->first.first;
        Rational s = 0;
        for (; it != c.field.entries.end() && it->first.first == a; ++it) s += abs(it->second);
        dump.emplace_back(a, s);
      }
    }
    rep.rows.push_back(std::move(row));
  }
}

}  // namespace

int cmd_cocycle_growth(const RunConfig& c) {
  const Input in = load_input(c, false);
  const MetricTable& m = in.metric();
  const bool tree = c.construction == "tree";
  if (!tree && c.construction != "flow") throw Error(ErrorCode::invalid_input, "--construction is flow or tree");
  const int delta = tree ? 1 : choose_delta(c, m);
  const int margin = c.margin.value_or(default_margin(in.space, delta));
  const std::vector<Vertex> domain = safe_region(in.space, margin);

  Vertex o = in.space.center.value_or(0);
  if (!c.origin.empty()) o = resolve_vertex(in, c.origin);
  if (!contains(domain, o)) throw Error(ErrorCode::out_of_domain, "the origin lies outside the safe region");
  const std::vector<Mover> movers = parse_movers(in, c, o, domain);

  GrowthOptions opts;
  opts.ps.clear();
  for (const auto& p : c.ps) opts.ps.push_back(parse_p(p));
  opts.fit_radius = c.fit_radius;
  opts.per_a = c.per_a;

  const std::int64_t C = support_bound_C(m, delta);
  MeasureFlow flow(m, delta);
  GrowthReport rep;
  std::vector<std::vector<double>> row_lp;
  if (tree) {
    rep = growth_report(flow, C, o, {}, domain, opts);
    tree_rows(m, o, movers, domain, opts, rep, row_lp);
  } else {
    rep = growth_report(flow, C, o, movers, domain, opts);
  }

  json rows = json::array();
  std::ostringstream csv;
  csv << "label,D";
  for (double p : opts.ps) csv << ",l" << p_name(p);
  csv << ",disjoint_count\n";
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const GrowthRow& row = rep.rows[i];
    json lp = json::object();
    csv << row.label << ',' << row.D;
    for (std::size_t j = 0; j < opts.ps.size(); ++j) {
      lp[p_name(opts.ps[j])] = number(row.lp[j]);
      csv << ',' << number(row.lp[j]).dump();
    }
    csv << ',' << row.disjoint_count << '\n';
    json r = {{"label", row.label},
              {"target", in.ids[movers[i].target]},
              {"D", row.D},
              {"l1", rational(row.l1)},
              {"lp", lp},
              {"disjoint_count", row.disjoint_count},
              {"linf_reference", row.linf_reference}};
    if (tree) {
      json mixed = json::object();
      for (std::size_t j = 0; j < opts.ps.size(); ++j) mixed[p_name(opts.ps[j])] = number(row_lp[i][j]);
      r["row_lp"] = mixed;
    }
    rows.push_back(std::move(r));
  }

  json spheres = json::array();
  for (const auto& [r, n] : rep.sphere_sizes) spheres.push_back({r, n});
  json report = {{"format", "lpcocycle.growth"},
                 {"version", 1},
                 {"config", to_json(c)},
                 {"construction", c.construction},
                 {"origin", in.ids[o]},
                 {"delta", delta},
                 {"margin", margin},
                 {"domain_size", domain.size()},
                 {"C", C},
                 {"eps_ann", number(rep.eps_ann)},
                 {"eps_dist", number(rep.eps_dist)},
                 {"p", c.ps},
                 {"rows", std::move(rows)},
                 {"sphere_sizes", std::move(spheres)},
                 {"h", number(rep.h)},
                 {"p_min_estimate", number(rep.p_min_estimate)},
                 {"eta_hat", rep.eta_hat ? number(*rep.eta_hat) : json(nullptr)}};
  if (c.per_a) {
    json dump = json::array();
    for (std::size_t i = 0; i < rep.per_a.size(); ++i) {
      json entries = json::array();
      for (const auto& [a, l1] : rep.per_a[i]) {
        entries.push_back({{"a", in.ids[a]}, {"d", m(o, a)}, {"l1", number(l1.get_d())}});
      }
      dump.push_back({{"label", rep.rows[i].label}, {"entries", std::move(entries)}});
    }
    report["per_a"] = std::move(dump);
  }
  emit(c, report);
  if (!c.csv_path.empty()) emit(c.csv_path, csv.str());
  return 0;
}

}  // namespace lpcocycle::cli
