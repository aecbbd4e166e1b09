#pragma once

// Closed-form counts at the base moduli: an odd prime p, and 2, 4, 8.

#include <array>
#include <vector>

#include "rho/numbers.hpp"
#include "rho/rho_value.hpp"

namespace rho {

enum class Trig { one, cos, sin };

// sign * 2^{(k_half*k + const_half)/2} * trig((phase_k*k + phase_c) * pi/4)
struct TrigTerm {
  int sign;
  int k_half;
  int const_half;
  Trig trig;
  int phase_k;
  int phase_c;
};

// Exact +/-2^{half_exp/2}; a count may only be built from even half_exp.
struct TwoAdicCoeff {
  int sign;  // -1, 0, +1
  int half_exp;
};

// Trigonometric closed forms of rho_{k,lambda}(4) and rho_{k,lambda}(8),
// one term list per residue lambda.
struct TwoAdicTable {
  std::array<std::vector<TrigTerm>, 4> mod4;
  std::array<std::vector<TrigTerm>, 8> mod8;
};

const TwoAdicTable& default_two_adic_table();

// Value of trig(j*pi/4) as a signed power of sqrt(2).
TwoAdicCoeff trig_value(Trig trig, unsigned j);

// Engine-wide knobs threaded through every formula evaluation.
struct EvalContext {
  const TwoAdicTable* two_adic = &default_two_adic_table();
  OpCounter* ops = nullptr;
};

// Lebesgue's sign exponents, carried as (sign, exponent of p).
struct LebesgueAux {
  int t_sign = 0;  // odd k only
  Natural t_exp;   // (k-1)/2
  int l_sign = 0;  // even k only
  Natural l_exp;   // (k-2)/2
};

LebesgueAux lebesgue_aux(const Natural& k, const Natural& p);

// rho_{k,lambda}(p) for an odd prime p and 0 <= lambda < p.
RhoValue rho_odd_prime(const Natural& k, const Natural& lambda_mod_p, const Natural& p,
                       const EvalContext& ctx = {});

// rho_{k,lambda}(2^t), t in {1,2,3}, 0 <= lambda < 2^t.
RhoValue rho_two_small(const Natural& k, unsigned lambda, unsigned t, const EvalContext& ctx = {});

// Count restricted to tuples with some unit coordinate, at modulus p (t = 1,
// p odd) or 2^t (p = 2, t in {1,2,3}).
RhoValue rho1_base(const Natural& k, const Natural& lambda, const Natural& p, unsigned t,
                   const EvalContext& ctx = {});

}  // namespace rho
