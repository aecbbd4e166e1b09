#pragma once

// General moduli: structured integers, factorization, and the multiplicative
// product over prime powers.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rho/base_cases.hpp"
#include "rho/query.hpp"
#include "rho/rho_value.hpp"

namespace rho {

struct PowerFactor {
  Natural base;
  Natural exp;
};

// An integer given either as a decimal literal or as a product of powers,
// e.g. "5^1000000" or "2^3*5^2". Factor bases need not be prime.
class StructuredInt {
 public:
  static StructuredInt plain(Natural value);
  static StructuredInt product(std::vector<PowerFactor> factors);

  bool is_plain() const noexcept { return factors_.empty(); }
  const Natural& plain_value() const noexcept { return plain_; }
  const std::vector<PowerFactor>& factors() const noexcept { return factors_; }

  bool is_zero() const;
  Natural mod(const Natural& m) const;
  // Upper bound on log2 of the value (-inf for zero).
  double log2_upper_bound() const;
  Natural value(std::uint64_t limit_bits = kDefaultExactLimitBits) const;
  // Canonical text that parses back to the same structure.
  std::string to_string() const;

  friend bool operator==(const StructuredInt& a, const StructuredInt& b);

 private:
  Natural plain_ = 0;
  std::vector<PowerFactor> factors_;
};

// INT := DEC | DEC '^' DEC | INT '*' INT   ('^' binds tighter; blanks ignored)
StructuredInt parse_structured(std::string_view text, bool allow_zero = false);

struct PrimeFactor {
  Natural p;
  Natural s;
};

// Strictly increasing primes with merged exponents.
struct Factorization {
  std::vector<PrimeFactor> factors;
};

Factorization factorize(const Natural& x);
Factorization factorize(const StructuredInt& x);

enum class Engine { closed, recursive, bruteforce, gauss, toth, matrix };

std::string_view to_string(Engine e) noexcept;
std::optional<Engine> parse_engine(std::string_view name) noexcept;

// lambda mod p^s, split as p^r * unit; nullopt when lambda = 0 mod p^s.
// Structured lambdas are split symbolically without forming p^s.
std::optional<UnitPart> reduce_lambda(const StructuredInt& lambda, const Natural& p,
                                      const Natural& s);

struct FactorResult {
  PrimePowerQuery query;
  RhoValue value;
};

struct GeneralResult {
  std::vector<FactorResult> factors;  // sorted by p

  Natural eval_mod(const Natural& m, OpCounter* ops = nullptr) const;
  Natural eval_exact(std::uint64_t limit_bits = kDefaultExactLimitBits) const;
  double log10_upper_bound() const;
  Natural digits_estimate() const;
};

GeneralResult rho_general(const Natural& k, const StructuredInt& lambda, const StructuredInt& n,
                          Engine engine, const EvalContext& ctx = {});

}  // namespace rho
