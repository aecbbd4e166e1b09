#pragma once

// Arbitrary-precision primitives shared by every engine.

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace rho {

// Nonnegativity of Natural is enforced at API boundaries; Int is signed.
using Natural = mpz_class;
using Int = mpz_class;

// Per-call accumulator of big-integer arithmetic operations. A power, a
// Legendre symbol or a geometric sum counts as one operation, matching the
// usual "arithmetic complexity" accounting.
class OpCounter {
 public:
  void add(std::uint64_t n = 1) noexcept { count_ += n; }
  std::uint64_t count() const noexcept { return count_; }
  void reset() noexcept { count_ = 0; }

 private:
  std::uint64_t count_ = 0;
};

inline void tick(OpCounter* ops, std::uint64_t n = 1) noexcept {
  if (ops != nullptr) ops->add(n);
}

Natural to_natural(std::uint64_t v);
std::uint64_t to_u64(const Natural& v);  // throws out_of_range if it does not fit
bool fits_u64(const Natural& v) noexcept;
std::string to_decimal(const Int& v);
// Parses an unsigned decimal literal; throws parse_error otherwise.
Natural parse_natural(const std::string& text);

// base^exp mod m.
Natural modpow(const Natural& base, const Natural& exp, const Natural& m);

// Euler's criterion; returns -1, 0 or +1.
int legendre(const Natural& a, const Natural& p);

// (sum_{j<count} x^j) mod m, without modular inverses.
Natural geom_sum_mod(const Natural& x, const Natural& count, const Natural& m);

struct PAdicSplit {
  Natural r;
  Natural unit;
};

// lambda = p^r * unit with p not dividing unit. O(log r) big divisions.
PAdicSplit p_adic_split(const Natural& lambda, const Natural& p);

// floor and parity helpers that read nicely at call sites.
inline bool is_odd(const Natural& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }
inline bool is_even(const Natural& v) { return !is_odd(v); }
unsigned long mod_small(const Natural& v, unsigned long m);  // v >= 0

// Miller-Rabin: deterministic below 3.3e24, error < 2^-128 above.
bool is_probable_prime(const Natural& n);
Natural next_prime(const Natural& n);  // smallest probable prime > n

}  // namespace rho
