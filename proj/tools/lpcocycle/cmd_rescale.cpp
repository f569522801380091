#include "commands.hpp"
#include "inputs.hpp"
#include "report_json.hpp"

#include "lpcocycle/io.hpp"
#include "lpcocycle/rescale.hpp"

namespace lpcocycle::cli {

// Writes the chain graph as a graph document (to --out, else stdout). When
// the document goes to a file, a summary of the two comparison
// inequalities is printed on stdout. Exit 1 if either fails.
int cmd_rescale(const RunConfig& c) {
  if (!c.delta) throw Error(ErrorCode::invalid_input, "rescale needs --delta");
  const Input in = load_input(c, true);
  const ChainRescaling r = chain_metric(in.metric(), *c.delta);
  const Prop51Report p = verify_prop_5_1(r);

  std::vector<Edge> edges;
  for (const auto& [u, v] : r.graph->edges()) edges.emplace_back(in.ids[u], in.ids[v]);
  Space out = make_space("chain", build_graph(in.ids, edges));
  if (in.graph) out.labels = in.space.labels;
  emit(c.out_path, format_graph_document(out));

  if (!c.out_path.empty()) {
    json summary = {{"config", to_json(c)},
                    {"vertices", in.size()},
                    {"edges", r.graph->edge_count()},
                    {"weakly_geodesic", p.weak.ok},
                    {"pairs", p.pairs},
                    {"upper_violations", p.upper_violations},
                    {"lower_violations", p.lower_violations},
                    {"lower_asserted", p.lower_asserted},
                    {"max_ratio", number(p.max_ratio)},
                    {"max_excess", p.max_excess},
                    {"witnesses", p.witnesses},
                    {"passed", p.passed()}};
    emit("", summary.dump(2) + "\n");
  }
  return p.passed() ? 0 : 1;
}

}  // namespace lpcocycle::cli
