#include "lpcocycle/error.hpp"

namespace lpcocycle {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "InvalidInput";
    case ErrorCode::empty_input: return "EmptyInput";
    case ErrorCode::self_loop: return "SelfLoop";
    case ErrorCode::disconnected_graph: return "DisconnectedGraph";
    case ErrorCode::size_limit: return "SizeLimit";
    case ErrorCode::out_of_domain: return "OutOfDomain";
    case ErrorCode::empty_region: return "EmptyRegion";
    case ErrorCode::empty_set: return "EmptySet";
    case ErrorCode::empty_target: return "EmptyTarget";
    case ErrorCode::no_valid_index: return "NoValidIndex";
    case ErrorCode::not_a_tree: return "NotATree";
    case ErrorCode::chain_disconnected: return "ChainDisconnected";
    case ErrorCode::internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace lpcocycle
