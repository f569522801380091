#include "run_config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "lpcocycle/error.hpp"

namespace lpcocycle::cli {

using nlohmann::json;

json to_json(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  json inputs = json::object();
  if (!c.graph_path.empty()) inputs["graph"] = c.graph_path;
  if (!c.metric_path.empty()) inputs["metric"] = c.metric_path;
  if (!c.builtin.empty()) inputs["builtin"] = c.builtin;
  j["inputs"] = inputs;
  if (c.subcommand == "cayley-ball") {
    j["rank"] = c.rank;
    j["radius"] = c.radius;
  }
  j["delta"] = c.delta ? json(*c.delta) : json(nullptr);
  j["margin"] = c.margin ? json(*c.margin) : json(nullptr);
  j["origin"] = c.origin;
  j["movers"] = c.movers;
  j["x"] = c.xs;
  j["a"] = c.as;
  j["p"] = c.ps;
  j["construction"] = c.construction;
  j["fit_radius"] = c.fit_radius;
  j["per_a"] = c.per_a;
  j["seed"] = c.seed;
  j["sample"] = c.sample;
  j["automorphism_samples"] = c.automorphism_samples;
  json outputs = json::object();
  if (!c.out_path.empty()) outputs["report"] = c.out_path;
  if (!c.csv_path.empty()) outputs["csv"] = c.csv_path;
  j["outputs"] = outputs;
  j["verbosity"] = c.verbosity;
  return j;
}

double parse_p(const std::string& p) {
  if (p == "inf" || p == "infinity") return INFINITY;
  char* end = nullptr;
  const double v = std::strtod(p.c_str(), &end);
  if (end == p.c_str() || *end != '\0' || !(v >= 1.0)) {
    throw Error(ErrorCode::invalid_input, "p must be a number >= 1 or 'inf', got '" + p + "'");
  }
  return v;
}

std::string p_name(double p) {
  if (std::isinf(p)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

}  // namespace lpcocycle::cli
