#include <iostream>
#include <new>

#include <CLI11.hpp>

#include "commands.hpp"
#include "lpcocycle/error.hpp"
#include "lpcocycle/parallel.hpp"

using namespace lpcocycle;
using namespace lpcocycle::cli;

namespace {

constexpr int kViolation = 1;
constexpr int kInputError = 2;
constexpr int kInternal = 3;

void add_inputs(CLI::App* s, RunConfig& c) {
  s->add_option("--graph", c.graph_path, "graph document or edge list");
  s->add_option("--metric", c.metric_path, "metric document (or anything --graph accepts)");
  s->add_option("--builtin", c.builtin, "line:L, cycle:n, ladder:L, tree:q:r or free:rank:N");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  int delta = 0;
  int margin = 0;

  CLI::App app{"Equivariant measure flows and l^p cocycles on finite hyperbolic graphs"};
  app.require_subcommand(1);
  app.add_option("--jobs", c.jobs, "worker threads (0: all cores); never changes results");
  app.add_flag("-v,--verbose", c.verbosity, "progress on stderr");

  auto* s_delta = app.add_subcommand("delta", "four-point constant and derived constants");
  add_inputs(s_delta, c);

  auto* s_ball = app.add_subcommand("cayley-ball", "ball B(1, 2N) of a free group, as a graph document");
  s_ball->add_option("--rank", c.rank, "number of free generators")->required();
  s_ball->add_option("--radius", c.radius, "N; distances inside B(1, N) are exact")->required();

  auto* s_measures = app.add_subcommand("measures", "the measures mu_x(a), exactly");
  add_inputs(s_measures, c);
  s_measures->add_option("--x", c.xs, "base points (labels or ids)")->delimiter(',')->required();
  s_measures->add_option("--a", c.as, "points a (default: the safe region)")->delimiter(',');

  auto* s_verify = app.add_subcommand("verify", "run every lemma and property suite");
  add_inputs(s_verify, c);
  s_verify->add_option("--automorphism-samples", c.automorphism_samples,
                       "random automorphisms of rooted trees used for equivariance");

  auto* s_growth = app.add_subcommand("cocycle-growth", "norms of c(g) for a list of movers");
  add_inputs(s_growth, c);
  s_growth->add_option("--origin", c.origin, "base point o (default: the center, else vertex 0)");
  s_growth->add_option("--movers", c.movers, "name^k, name^k1..k2 or vertices")->delimiter(',')->required();
  s_growth->add_option("--p", c.ps, "exponents, e.g. 1,2,4,inf")->delimiter(',');
  s_growth->add_option("--construction", c.construction, "flow (default) or tree");
  s_growth->add_option("--fit-radius", c.fit_radius, "spheres used in the growth fit (0: all)");
  s_growth->add_flag("--per-a", c.per_a, "dump ||mu_o(a) - mu_go(a)||_1 per a");
  s_growth->add_option("--csv", c.csv_path, "plot table: label, D, l<p>..., disjoint_count");

  auto* s_rescale = app.add_subcommand("rescale", "chain metric d' as a graph document");
  add_inputs(s_rescale, c);

  CLI::Option* delta_opt[4] = {};
  CLI::Option* margin_opt[3] = {};
  int i = 0;
  for (auto* s : {s_measures, s_verify, s_growth, s_rescale}) {
    delta_opt[i++] = s->add_option("--delta", delta, "schedule constant (default: max(1, delta_min))");
  }
  i = 0;
  for (auto* s : {s_measures, s_verify, s_growth}) {
    margin_opt[i++] = s->add_option("--margin", margin, "distance kept from the truncation boundary");
    s->add_option("--seed", c.seed, "seed for every sampled choice");
    s->add_option("--sample", c.sample, "thin the region to this many points (0: all)");
  }
  for (auto* s : {s_delta, s_ball, s_measures, s_verify, s_growth, s_rescale}) {
    s->add_option("--out", c.out_path, "output file (default: stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  for (auto* o : delta_opt) {
    if (o->count() > 0) c.delta = delta;
  }
  for (auto* o : margin_opt) {
    if (o->count() > 0) c.margin = margin;
  }
  set_default_jobs(c.jobs);

  try {
    if (c.subcommand == "delta") return cmd_delta(c);
    if (c.subcommand == "cayley-ball") return cmd_cayley_ball(c);
    if (c.subcommand == "measures") return cmd_measures(c);
    if (c.subcommand == "verify") return cmd_verify(c) == 0 ? 0 : kViolation;
    if (c.subcommand == "cocycle-growth") return cmd_cocycle_growth(c);
    if (c.subcommand == "rescale") return cmd_rescale(c) == 0 ? 0 : kViolation;
  } catch (const Error& e) {
    std::cerr << "lpcocycle: " << e.what() << '\n';
    return e.code() == ErrorCode::internal ? kInternal : kInputError;
  } catch (const std::bad_alloc&) {
    std::cerr << "lpcocycle: out of memory\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "lpcocycle: internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
