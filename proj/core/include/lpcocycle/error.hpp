#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lpcocycle {

/// Dense vertex id, always in 0..n-1 once a graph has been built.
using Vertex = std::int32_t;

/// Exact rational used for every probability mass and cocycle entry.
using Rational = mpq_class;

enum class ErrorCode {
  invalid_input,
  empty_input,
  self_loop,
  disconnected_graph,
  size_limit,
  out_of_domain,
  empty_region,
  empty_set,
  empty_target,
  no_valid_index,
  not_a_tree,
  chain_disconnected,
  internal,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lpcocycle
