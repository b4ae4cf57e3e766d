#pragma once

#include <stdexcept>
#include <string>

namespace x0q {

enum class Errc {
  invalid_argument,
  bad_reduction,
  unsupported_regime,
  invariant_violation,
  not_applicable,
  network_unavailable,
  snapshot_miss,
  parse_error,
  divergence,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace x0q
