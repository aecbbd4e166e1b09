#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rho {

enum class Errc {
  invalid_modulus,
  invalid_prime,
  invalid_input,
  out_of_range,
  too_large,
  budget_exceeded,
  parse_error,
  numerical_instability,
  factorization_give_up,
};

std::string_view to_string(Errc code) noexcept;

// All recoverable failures raised by the library. Internal consistency
// violations (a formula producing a non-integer, say) throw std::logic_error.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace rho
