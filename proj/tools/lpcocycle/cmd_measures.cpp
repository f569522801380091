#include "commands.hpp"
#include "inputs.hpp"
#include "report_json.hpp"

#include "lpcocycle/measure_flow.hpp"

namespace lpcocycle::cli {

int cmd_measures(const RunConfig& c) {
  const Input in = load_input(c, false);
  if (c.xs.empty()) throw Error(ErrorCode::invalid_input, "measures needs at least one --x");
  const int delta = choose_delta(c, in.metric());

  std::vector<Vertex> xs;
  for (const auto& ref : c.xs) xs.push_back(resolve_vertex(in, ref));
  std::vector<Vertex> as;
  if (c.as.empty()) {
    as = region_for(in, c, delta);
  } else {
    for (const auto& ref : c.as) as.push_back(resolve_vertex(in, ref));
  }

  MeasureFlow flow(in.metric(), delta);
  json list = json::array();
  for (Vertex x : xs) {
    for (Vertex a : as) {
      list.push_back({{"x", in.ids[x]}, {"a", in.ids[a]}, {"atoms", atoms(flow.mu(a, x), in.ids)}});
    }
  }
  emit(c, {{"config", to_json(c)}, {"delta", delta}, {"measures", std::move(list)}});
  return 0;
}

}  // namespace lpcocycle::cli
