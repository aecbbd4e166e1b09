#include "rho/query.hpp"

#include <stdexcept>

#include "rho/error.hpp"

namespace rho {

Natural unit_modulus(const Natural& p) { return p == 2 ? Natural(8) : p; }

void validate(const PrimePowerQuery& q) {
  if (q.k < 1) throw Error(Errc::invalid_input, "k must be >= 1");
  if (q.s < 1) throw Error(Errc::invalid_input, "s must be >= 1");
  if (!is_probable_prime(q.p)) {
    throw Error(Errc::invalid_prime, "modulus base is not prime: " + to_decimal(q.p));
  }
  if (!q.lambda) return;
  const UnitPart& u = *q.lambda;
  if (sgn(u.r) < 0 || u.r >= q.s) throw Error(Errc::out_of_range, "valuation r must satisfy r < s");
  const Natural m = unit_modulus(q.p);
  if (sgn(u.unit_residue) < 0 || u.unit_residue >= m) {
    throw Error(Errc::out_of_range, "unit residue must be reduced mod " + to_decimal(m));
  }
  if (mpz_divisible_p(u.unit_residue.get_mpz_t(), q.p.get_mpz_t()) != 0) {
    throw Error(Errc::invalid_input, "unit residue is divisible by p");
  }
}

PrimePowerQuery make_query(const Natural& k, const Natural& p, const Natural& s,
                           const Natural& lambda) {
  PrimePowerQuery q{k, p, s, std::nullopt};
  if (sgn(lambda) < 0) throw Error(Errc::out_of_range, "lambda must be >= 0");
  if (s < 1) throw Error(Errc::invalid_input, "s must be >= 1");
  if (p < 2) throw Error(Errc::invalid_prime, "p must be prime");
  // lambda < 2^{bits(lambda)} <= 2^{s(bits(p)-1)} <= p^s settles most cases
  // without forming p^s.
  const Natural lambda_bits = mpz_sizeinbase(lambda.get_mpz_t(), 2);
  const Natural floor_bits = s * Natural(mpz_sizeinbase(p.get_mpz_t(), 2) - 1);
  if (sgn(lambda) != 0 && lambda_bits > floor_bits) {
    Natural ps;
    mpz_pow_ui(ps.get_mpz_t(), p.get_mpz_t(), mpz_get_ui(s.get_mpz_t()));
    if (lambda >= ps) throw Error(Errc::out_of_range, "lambda must be < p^s (reduce it first)");
  }
  if (sgn(lambda) != 0) {
    PAdicSplit split = p_adic_split(lambda, p);
    q.lambda = UnitPart{split.r, split.unit % unit_modulus(p)};
  }
  validate(q);
  return q;
}

Natural lambda_residue(const PrimePowerQuery& q, unsigned t) {
  if (!q.lambda) return 0;
  const UnitPart& u = *q.lambda;
  if (u.r >= t) return 0;
  Natural m;
  mpz_pow_ui(m.get_mpz_t(), q.p.get_mpz_t(), t);
  Natural shift;
  mpz_pow_ui(shift.get_mpz_t(), q.p.get_mpz_t(), mpz_get_ui(u.r.get_mpz_t()));
  return shift * u.unit_residue % m;
}

PrimePowerQuery descend(const PrimePowerQuery& q) {
  if (q.s < 3) throw std::logic_error("descend needs s >= 3");
  PrimePowerQuery out{q.k, q.p, q.s - 2, std::nullopt};
  if (q.lambda) {
    if (q.lambda->r < 2) throw std::logic_error("descend needs p^2 | lambda");
    out.lambda = UnitPart{q.lambda->r - 2, q.lambda->unit_residue};
  }
  return out;
}

}  // namespace rho
