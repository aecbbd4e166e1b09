#pragma once

// Constant-operation evaluation of rho_{k,lambda}(p^s).
//
// Every formula here reduces to the base moduli (p, or 2/4/8) plus the
// geometric-type sum
//   Omega(k,p,s,N) = sum_{i=0}^{N} p^{k i + (s-2i-1)(k-1)},
// which is carried symbolically as one GeomTerm (k >= 3) or one PowerTerm /
// short geometric series (k = 2 / k = 1). The number of big-integer
// operations is independent of s, r and the magnitude of k.

#include "rho/base_cases.hpp"
#include "rho/query.hpp"
#include "rho/rho_value.hpp"

namespace rho {

// N < 0 yields zero (empty sum).
RhoValue omega(const Natural& k, const Natural& p, const Natural& s, const Int& n,
               const EvalContext& ctx = {});

// Odd p, lambda != 0.
RhoValue rho_odd_pp(const PrimePowerQuery& q, const EvalContext& ctx = {});
// Odd p, lambda = 0.
RhoValue rho_odd_zero_pp(const Natural& k, const Natural& p, const Natural& s,
                         const EvalContext& ctx = {});
// p = 2, lambda != 0, s >= 3.
RhoValue rho_two_pp(const PrimePowerQuery& q, const EvalContext& ctx = {});
// p = 2, lambda = 0, s >= 3.
RhoValue rho_two_zero_pp(const Natural& k, const Natural& s, const EvalContext& ctx = {});

// Dispatcher over all of the above and the base cases.
RhoValue rho_prime_power(const PrimePowerQuery& q, const EvalContext& ctx = {});
RhoValue rho_prime_power(const Natural& k, const Natural& p, const Natural& s,
                         const Natural& lambda, const EvalContext& ctx = {});

}  // namespace rho
