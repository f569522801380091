#include "commands.hpp"
#include "inputs.hpp"
#include "report_json.hpp"

namespace lpcocycle::cli {

int cmd_delta(const RunConfig& c) {
  const Input in = load_input(c, true);
  json r = hyperbolicity(hyperbolicity_report(in.metric()), in.ids);
  r["config"] = to_json(c);
  r["vertices"] = in.size();
  emit(c, r);
  return 0;
}

}  // namespace lpcocycle::cli
