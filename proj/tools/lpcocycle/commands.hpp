#pragma once

#include "run_config.hpp"

namespace lpcocycle::cli {

// Each returns the process exit code: 0 pass, 1 mathematical violation.
// Input problems surface as lpcocycle::Error and are mapped by main().

int cmd_delta(const RunConfig& c);
int cmd_cayley_ball(const RunConfig& c);
int cmd_measures(const RunConfig& c);
int cmd_verify(const RunConfig& c);
int cmd_cocycle_growth(const RunConfig& c);
int cmd_rescale(const RunConfig& c);

}  // namespace lpcocycle::cli
