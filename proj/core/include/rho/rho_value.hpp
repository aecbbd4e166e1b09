#pragma once

// Symbolic exact values of the form
//   sum_i c_i p^{e_i}  +  sum_j c_j p^{a_j} (1 + p^{d_j} + ... + p^{(n_j-1) d_j})
// over a fixed prime base p. Engines return these so that astronomically
// large counts can still be reduced modulo m or sized without expansion.

#include <cstdint>
#include <variant>
#include <vector>

#include "rho/numbers.hpp"

namespace rho {

struct PowerTerm {
  Int coeff;
  Natural exp;
};

// coeff * p^exp0 * sum_{j<count} p^{j*step}
struct GeomTerm {
  Int coeff;
  Natural exp0;
  Natural step;
  Natural count;
};

using Term = std::variant<PowerTerm, GeomTerm>;

inline constexpr std::uint64_t kDefaultExactLimitBits = std::uint64_t{1} << 26;

class RhoValue {
 public:
  explicit RhoValue(Natural base_p);

  static RhoValue constant(const Natural& p, const Int& c);
  static RhoValue power(const Natural& p, const Int& coeff, const Natural& exp);
  static RhoValue geometric(const Natural& p, const Int& coeff, const Natural& exp0,
                            const Natural& step, const Natural& count);
  // Takes ownership of raw terms and normalizes them.
  static RhoValue from_terms(const Natural& p, std::vector<Term> terms);

  const Natural& base() const noexcept { return base_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool has_geometric() const noexcept;

  RhoValue& operator+=(const RhoValue& other);
  RhoValue& operator-=(const RhoValue& other);
  friend RhoValue operator+(RhoValue a, const RhoValue& b) { return a += b; }
  friend RhoValue operator-(RhoValue a, const RhoValue& b) { return a -= b; }

  // coeff * p^exp * (*this)
  RhoValue scaled(const Int& coeff, const Natural& exp) const;
  // (*this) / p^exp by exponent subtraction; every exponent must stay >= 0.
  RhoValue divided_by_power(const Natural& exp) const;

  // At most one side may carry geometric terms.
  friend RhoValue operator*(const RhoValue& a, const RhoValue& b);

 private:
  void normalize();

  Natural base_;
  std::vector<Term> terms_;
};

// Collects many summands and normalizes once; used by the O(s) engine where
// repeated normalization would be quadratic.
class RhoAccumulator {
 public:
  explicit RhoAccumulator(Natural base_p) : base_(std::move(base_p)) {}
  void add(const RhoValue& v);
  void add_scaled(const RhoValue& v, const Int& coeff, const Natural& exp);
  RhoValue finish() &&;

 private:
  Natural base_;
  std::vector<Term> terms_;
};

Natural eval_exact(const RhoValue& v, std::uint64_t limit_bits = kDefaultExactLimitBits);
Natural eval_mod(const RhoValue& v, const Natural& m, OpCounter* ops = nullptr);

// Upper bound on log10 of the value; -infinity for an empty term list.
double log10_upper_bound(const RhoValue& v);
Natural digits_estimate(const RhoValue& v);
// Decimal digits from a log10 upper bound (1 for zero).
Natural digits_from_log10(double log10_bound);

}  // namespace rho
