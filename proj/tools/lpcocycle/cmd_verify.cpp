#include <algorithm>
#include <chrono>
#include <map>
#include <random>

#include "commands.hpp"
#include "inputs.hpp"
#include "report_json.hpp"

#include "lpcocycle/measure_suites.hpp"
#include "lpcocycle/rescale.hpp"

namespace lpcocycle::cli {
namespace {

// Spaces above this size skip the chain-metric comparison.
constexpr std::size_t kRescaleLimit = 1024;

struct Battery {
  const RunConfig& config;
  Ids ids;
  json suites = json::object();
  SuiteReport total;

  template <typename F>
  SuiteReport run(const std::string& name, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport r = f();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    note(config, name + ": " + std::to_string(r.checked) + " checked, " + std::to_string(r.violations) +
                     " violations (" + std::to_string(s) + " s)");
    suites[name] = suite(r, ids);
    total.merge(r);
    return r;
  }
};

SuiteReport prop_5_1_suite(const MetricTable& m, int delta, json& extra) {
  const Prop51Report p = verify_prop_5_1(chain_metric(m, delta));
  SuiteReport r;
  r.checked = p.pairs;
  r.violations = p.upper_violations + p.lower_violations;
  for (const auto& w : p.witnesses) r.witnesses.push_back({{}, {}, w});
  extra = {{"weakly_geodesic", p.weak.ok}, {"lower_asserted", p.lower_asserted},
           {"max_ratio", number(p.max_ratio)}, {"max_excess", p.max_excess}};
  return r;
}

// One step of T_a on a pair of neighbours, against the full limit, for every
// far a. Informational: the one-step difference need not shrink with d(x, a)
// even though the limits do. Among the first kDemoPairs neighbour pairs in
// the region, shows the one whose one-step difference stays >= 1 the
// farthest out.
constexpr std::size_t kDemoPairs = 256;

json single_step_demo(MeasureFlow& flow, std::int64_t C, std::span<const Vertex> region, Ids ids) {
  const MetricTable& m = flow.metric();
  const int delta = flow.delta();

  struct Agg {
    int n = 0;
    int count = 0;
    Rational min_step, max_step, max_mu, bound;
  };
  struct Candidate {
    Vertex x = 0, x2 = 0;
    std::map<int, Agg> by_d;
    int reach = -1;  // largest d(x, a) with a one-step difference >= 1
  };
  std::optional<Candidate> best;
  std::size_t tried = 0;
  for (Vertex x : region) {
    for (Vertex x2 : m.graph()->neighbors(x)) {
      if (x2 < x || !std::binary_search(region.begin(), region.end(), x2)) continue;
      if (tried++ == kDemoPairs) break;
      std::vector<Vertex> as;
      for (Vertex a : region) {
        if (m(x, a) > 4 * delta && m(x2, a) > 4 * delta) as.push_back(a);
      }
      Candidate cand{x, x2, {}, -1};
      for (const auto& r : single_step_rows(flow, C, x, x2, as)) {
        auto [it, fresh] = cand.by_d.try_emplace(r.d);
        Agg& g = it->second;
        if (fresh) {
          g.n = r.n;
          g.min_step = r.one_step_l1;
          g.bound = r.bound;
        }
        ++g.count;
        g.min_step = std::min(g.min_step, r.one_step_l1);
        g.max_step = std::max(g.max_step, r.one_step_l1);
        g.max_mu = std::max(g.max_mu, r.mu_l1);
        if (r.one_step_l1 >= 1) cand.reach = std::max(cand.reach, r.d);
      }
      if (!best || cand.reach > best->reach) best = std::move(cand);
    }
    if (tried > kDemoPairs) break;
  }
  if (!best) return nullptr;

  json table = json::array();
  bool within = true;
  for (const auto& [d, g] : best->by_d) {
    within = within && g.max_mu <= g.bound;
    table.push_back({{"d", d},
                     {"n", g.n},
                     {"count", g.count},
                     {"min_one_step_l1", number(g.min_step.get_d())},
                     {"max_one_step_l1", number(g.max_step.get_d())},
                     {"max_mu_l1", number(g.max_mu.get_d())},
                     {"annulus_bound", number(g.bound.get_d())}});
  }
  return {{"pair", {ids[best->x], ids[best->x2]}},
          {"pairs_tried", std::min(tried, kDemoPairs)},
          {"one_step_reach", best->reach},
          {"by_distance", table},
          {"mu_within_annulus_bound", within}};
}

json graph_battery(const Input& in, const RunConfig& c, int delta, SuiteReport& total) {
  const MetricTable& m = in.metric();
  const std::vector<Vertex> region = region_for(in, c, delta);
  const std::int64_t C = support_bound_C(m, delta);
  const DecayConstants k = DecayConstants::derive(C, delta);
  MeasureFlow flow(m, delta);

  Battery b{c, in.ids, json::object(), {}};
  b.run("lemma_3_3", [&] { return suite_lemma_3_3(m, region, delta, 4 * delta); });
  b.run("lemma_3_4", [&] { return suite_lemma_3_4(m, region, delta, 4 * delta, 4 * delta); });
  b.run("lemma_3_5", [&] { return suite_lemma_3_5(m, region, 4 * delta); });
  b.run("support", [&] { return suite_support(flow, region); });
  b.run("lemma_4_5", [&] { return suite_lemma_4_5(flow, region); });
  b.run("lemma_4_6", [&] { return suite_lemma_4_6(flow, region, C); });
  b.run("lemma_4_7", [&] { return suite_lemma_4_7(flow, region, C); });
  b.run("contraction", [&] { return suite_contraction(flow, region, C); });

  NeighborDecayReport ii;
  b.run("neighbor_decay", [&] {
    ii = suite_theorem_ii(flow, region, k);
    return ii.report;
  });
  b.suites["neighbor_decay"]["fitted_rate"] = ii.fitted_rate ? number(*ii.fitted_rate) : json(nullptr);

  DisjointnessReport iii;
  b.run("disjointness", [&] {
    iii = suite_theorem_iii(flow, region);
    return iii.report;
  });
  b.suites["disjointness"]["eta_hat"] = iii.eta_hat ? number(*iii.eta_hat) : json(nullptr);

  std::vector<Isometry> isos = in.space.automorphisms;
  if (in.space.graph->is_tree() && in.space.center) {
    std::mt19937_64 rng(c.seed);
    for (int i = 0; i < c.automorphism_samples; ++i) {
      isos.push_back(random_tree_automorphism(*in.space.graph, *in.space.center, rng));
    }
  }
  b.run("equivariance", [&] { return suite_equivariance(flow, region, isos); });

  // Whole-space and quadratic in pairs: kept to small spaces.
  if (m.size() <= kRescaleLimit) {
    json prop;
    b.run("prop_5_1", [&] { return prop_5_1_suite(m, delta, prop); });
    b.suites["prop_5_1"].update(prop);
  } else {
    b.suites["prop_5_1"] = {{"skipped", "more than " + std::to_string(kRescaleLimit) + " points"}};
  }

  total.merge(b.total);
  return {{"delta", delta},
          {"C", C},
          {"eps_ann", number(k.eps_ann)},
          {"eps_dist", number(k.eps_dist)},
          {"C_dist", number(k.C_dist)},
          {"region_size", region.size()},
          {"suites", std::move(b.suites)},
          {"single_step", single_step_demo(flow, C, region, in.ids)}};
}

}  // namespace

int cmd_verify(const RunConfig& c) {
  const Input in = load_input(c, true);
  const MetricTable& m = in.metric();
  json r;
  r["config"] = to_json(c);
  r["vertices"] = in.size();

  // BFS metrics are metrics by construction; only documents can be corrupt.
  SuiteReport total;
  SuiteReport axioms;
  if (!in.graph) {
    axioms = check_metric_axioms(m);
    total.merge(axioms);
    r["metric_axioms"] = suite(axioms, in.ids);
  }

  if (axioms.passed()) {
    const HyperbolicityReport h = hyperbolicity_report(m);
    r.update(hyperbolicity(h, in.ids));
    const int delta = c.delta.value_or(h.delta_use);
    if (delta < 1) throw Error(ErrorCode::invalid_input, "--delta must be at least 1");

    if (in.graph) {
      r["battery"] = graph_battery(in, c, delta, total);
    } else {
      // A bare metric: the lemmas that make sense on any metric space, then
      // the rescaling, then the whole battery on the chain graph.
      std::vector<Vertex> all(in.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Vertex>(i);
      Battery b{c, in.ids, json::object(), {}};
      b.run("lemma_3_3", [&] { return suite_lemma_3_3(m, all, delta, 4 * delta); });
      b.run("lemma_3_4", [&] { return suite_lemma_3_4(m, all, delta, 4 * delta, 4 * delta); });
      b.run("lemma_3_5", [&] { return suite_lemma_3_5(m, all, 4 * delta); });
      json prop;
      b.run("prop_5_1", [&] { return prop_5_1_suite(m, delta, prop); });
      b.suites["prop_5_1"].update(prop);
      PipelineReport pipe;
      b.run("rescaled_support", [&] {
        pipe = pipeline_theorem_5_2(m, delta);
        return pipe.support;
      });
      b.suites["rescaled_support"]["source_radius"] = pipe.source_radius;
      b.suites["rescaled_support"]["max_support_radius"] = pipe.max_support_radius;
      total.merge(b.total);
      r["battery"] = {{"delta", delta}, {"suites", std::move(b.suites)}};

      Input chain;
      const ChainRescaling rescaled = chain_metric(m, delta);
      chain.space = make_space("chain", *rescaled.graph);
      chain.graph = true;
      chain.ids = in.ids;
      RunConfig inner = c;
      inner.delta.reset();
      inner.margin = 0;
      r["rescaled"] = graph_battery(chain, inner, std::max(1, four_point_delta(chain.metric()).delta_min), total);
    }
  } else {
    r["skipped"] = "the input is not a metric; nothing downstream is meaningful";
  }

  r["lemma_suites"] = {{"checked", total.checked},
                       {"violations", total.violations},
                       {"precondition_unmet", total.precondition_unmet}};
  r["passed"] = total.passed();
  emit(c, r);
  return total.passed() ? 0 : 1;
}

}  // namespace lpcocycle::cli
