#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jante {

enum class Errc {
  invalid_size,
  self_loop,
  duplicate_edge,
  disconnected,
  index_out_of_range,
  invalid_distribution,
  invalid_configuration,
  invalid_stop_rule,
  unsupported_topology,
  unsupported_support,
  domain_error,
  degenerate_interval,
  insufficient_data,
  invalid_spec,
  io_failure,
  nontermination,
  verification_failure,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can tell validation failures apart.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace jante
