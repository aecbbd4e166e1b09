#pragma once

#include <optional>

#include "rho/numbers.hpp"

namespace rho {

// lambda = p^r * lambda' with p not dividing lambda'. Only lambda' mod p
// (odd p) or lambda' mod 8 (p = 2) influences the count.
struct UnitPart {
  Natural r;
  Natural unit_residue;
};

// One instance rho_{k,lambda}(p^s); lambda == nullopt means lambda = 0 mod p^s.
struct PrimePowerQuery {
  Natural k;
  Natural p;
  Natural s;
  std::optional<UnitPart> lambda;
};

// 8 for p = 2, p otherwise.
Natural unit_modulus(const Natural& p);

// Splits lambda (required 0 <= lambda < p^s) and validates k, p, s.
PrimePowerQuery make_query(const Natural& k, const Natural& p, const Natural& s,
                           const Natural& lambda);

// Checks the invariants of an already-split query; throws on violation.
void validate(const PrimePowerQuery& q);

// lambda mod p^t for t <= min(s, 3) when p = 2, or t <= 1 when p is odd.
Natural lambda_residue(const PrimePowerQuery& q, unsigned t);

// (k, p, s-2, lambda/p^2); requires s >= 3 and p^2 | lambda.
PrimePowerQuery descend(const PrimePowerQuery& q);

}  // namespace rho
