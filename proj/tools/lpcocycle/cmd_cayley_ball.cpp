#include "commands.hpp"
#include "inputs.hpp"
#include "lpcocycle/io.hpp"

namespace lpcocycle::cli {

// The document is the graph itself (labels, partial translations, boundary),
// so it can be fed straight back in with --graph.
int cmd_cayley_ball(const RunConfig& c) {
  if (c.rank < 1) throw Error(ErrorCode::invalid_input, "--rank must be at least 1");
  if (c.radius < 0) throw Error(ErrorCode::invalid_input, "--radius must be nonnegative");
  const GroupBall ball = free_group_ball(c.rank, c.radius);
  emit(c.out_path, format_graph_document(ball.space()));
  return 0;
}

}  // namespace lpcocycle::cli
