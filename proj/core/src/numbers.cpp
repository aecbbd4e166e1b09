#include "rho/numbers.hpp"

#include <cctype>
#include <vector>

#include "rho/error.hpp"

namespace rho {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_modulus: return "invalid modulus";
    case Errc::invalid_prime: return "invalid prime";
    case Errc::invalid_input: return "invalid input";
    case Errc::out_of_range: return "out of range";
    case Errc::too_large: return "too large";
    case Errc::budget_exceeded: return "budget exceeded";
    case Errc::parse_error: return "parse error";
    case Errc::numerical_instability: return "numerical instability";
    case Errc::factorization_give_up: return "factorization gave up";
  }
  return "unknown";
}

Natural to_natural(std::uint64_t v) {
  Natural out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

bool fits_u64(const Natural& v) noexcept {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const Natural& v) {
  if (!fits_u64(v)) {
    throw Error(Errc::out_of_range, "value does not fit in 64 bits: " + to_decimal(v));
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

std::string to_decimal(const Int& v) { return v.get_str(10); }

Natural parse_natural(const std::string& text) {
  if (text.empty()) throw Error(Errc::parse_error, "empty integer literal");
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
      throw Error(Errc::parse_error, "not a decimal integer: '" + text + "'");
    }
  }
  return Natural(text, 10);
}

unsigned long mod_small(const Natural& v, unsigned long m) {
  return mpz_fdiv_ui(v.get_mpz_t(), m);
}

Natural modpow(const Natural& base, const Natural& exp, const Natural& m) {
  if (sgn(m) <= 0) throw Error(Errc::invalid_modulus, "modulus must be >= 1");
  if (sgn(exp) < 0) throw Error(Errc::invalid_input, "negative exponent");
  Natural out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return out;
}

int legendre(const Natural& a, const Natural& p) {
  if (p <= 1 || is_even(p)) {
    throw Error(Errc::invalid_prime, "Legendre symbol needs an odd prime, got " + to_decimal(p));
  }
  Natural a_mod = a % p;
  if (a_mod < 0) a_mod += p;
  if (a_mod == 0) return 0;
  Natural half = (p - 1) / 2;
  Natural e = modpow(a_mod, half, p);
  if (e == 1) return 1;
  if (e == p - 1) return -1;
  throw Error(Errc::invalid_prime, "Euler criterion failed; modulus is not prime: " + to_decimal(p));
}

Natural geom_sum_mod(const Natural& x, const Natural& count, const Natural& m) {
  if (sgn(m) <= 0) throw Error(Errc::invalid_modulus, "modulus must be >= 1");
  if (sgn(count) < 0) throw Error(Errc::invalid_input, "negative term count");
  // Invariant while scanning count's bits from the top: sum = sum_{j<c} x^j,
  // power = x^c, for c the prefix read so far.
  Natural xm;
  mpz_mod(xm.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  Natural sum = 0;
  Natural power = 1 % m;
  Natural tmp;
  const std::size_t bits = sgn(count) == 0 ? 0 : mpz_sizeinbase(count.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    mpz_add_ui(tmp.get_mpz_t(), power.get_mpz_t(), 1);
    mpz_mul(sum.get_mpz_t(), sum.get_mpz_t(), tmp.get_mpz_t());
    mpz_mod(sum.get_mpz_t(), sum.get_mpz_t(), m.get_mpz_t());
    mpz_mul(power.get_mpz_t(), power.get_mpz_t(), power.get_mpz_t());
    mpz_mod(power.get_mpz_t(), power.get_mpz_t(), m.get_mpz_t());
    if (mpz_tstbit(count.get_mpz_t(), i) != 0) {
      mpz_add(sum.get_mpz_t(), sum.get_mpz_t(), power.get_mpz_t());
      mpz_mod(sum.get_mpz_t(), sum.get_mpz_t(), m.get_mpz_t());
      mpz_mul(power.get_mpz_t(), power.get_mpz_t(), xm.get_mpz_t());
      mpz_mod(power.get_mpz_t(), power.get_mpz_t(), m.get_mpz_t());
    }
  }
  return sum;
}

PAdicSplit p_adic_split(const Natural& lambda, const Natural& p) {
  if (sgn(lambda) <= 0) {
    throw Error(Errc::invalid_input, "p-adic split of zero; use the lambda = 0 formulas");
  }
  if (p < 2) throw Error(Errc::invalid_prime, "p-adic split needs p >= 2");
  // Climb p, p^2, p^4, ... while they divide, then descend greedily.
  std::vector<Natural> powers{p};
  Natural q = lambda;
  Natural r = 0;
  while (mpz_divisible_p(q.get_mpz_t(), powers.back().get_mpz_t()) != 0) {
    mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), powers.back().get_mpz_t());
    Natural step;
    mpz_ui_pow_ui(step.get_mpz_t(), 2, powers.size() - 1);
    r += step;
    powers.push_back(powers.back() * powers.back());
  }
  for (std::size_t i = powers.size() - 1; i-- > 0;) {
    if (mpz_divisible_p(q.get_mpz_t(), powers[i].get_mpz_t()) != 0) {
      mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), powers[i].get_mpz_t());
      Natural step;
      mpz_ui_pow_ui(step.get_mpz_t(), 2, i);
      r += step;
    }
  }
  return {r, q};
}

}  // namespace rho
