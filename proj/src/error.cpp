#include "jante/error.hpp"

namespace jante {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_size: return "invalid_size";
    case Errc::self_loop: return "self_loop";
    case Errc::duplicate_edge: return "duplicate_edge";
    case Errc::disconnected: return "disconnected";
    case Errc::index_out_of_range: return "index_out_of_range";
    case Errc::invalid_distribution: return "invalid_distribution";
    case Errc::invalid_configuration: return "invalid_configuration";
    case Errc::invalid_stop_rule: return "invalid_stop_rule";
    case Errc::unsupported_topology: return "unsupported_topology";
    case Errc::unsupported_support: return "unsupported_support";
    case Errc::domain_error: return "domain_error";
    case Errc::degenerate_interval: return "degenerate_interval";
    case Errc::insufficient_data: return "insufficient_data";
    case Errc::invalid_spec: return "invalid_spec";
    case Errc::io_failure: return "io_failure";
    case Errc::nontermination: return "nontermination";
    case Errc::verification_failure: return "verification_failure";
  }
  return "unknown";
}

}  // namespace jante
