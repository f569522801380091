#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lpcocycle::cli {

/// Everything a run depends on. Serialised verbatim into every report, so a
/// report can be regenerated from its "config" block alone. `jobs` only caps
/// parallelism and never changes results, so it is left out.
struct RunConfig {
  std::string subcommand;

  // inputs: at most one of these is set
  std::string graph_path;
  std::string metric_path;
  std::string builtin;

  // cayley-ball
  int rank = 2;
  int radius = 2;

  std::optional<int> delta;  // defaults to max(1, delta_min)
  std::optional<int> margin; // defaults per space, see default_margin()
  std::string origin;
  std::vector<std::string> movers;
  std::vector<std::string> xs;
  std::vector<std::string> as;
  std::vector<std::string> ps{"1", "2"};
  std::string construction = "flow";
  int fit_radius = 0;
  bool per_a = false;

  std::uint64_t seed = 1;
  std::size_t sample = 0;           // 0: exhaustive over the region
  int automorphism_samples = 50;    // random tree automorphisms for equivariance

  std::string out_path;
  std::string csv_path;
  int verbosity = 0;
  unsigned jobs = 0;
};

nlohmann::json to_json(const RunConfig& c);

/// "1", "2.5", "inf".
double parse_p(const std::string& p);

/// Column suffix for a p value: 1 -> "1", 2.5 -> "2.5", inf -> "inf".
std::string p_name(double p);

}  // namespace lpcocycle::cli
