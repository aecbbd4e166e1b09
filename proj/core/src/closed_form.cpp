#include "rho/closed_form.hpp"

#include "rho/error.hpp"

namespace rho {
namespace {

// rho_{k,0}(p) - 1 for odd p.
RhoValue odd_unit_zero(const Natural& k, const Natural& p, const EvalContext& ctx) {
  return rho1_base(k, 0, p, 1, ctx);
}

// Omega(k,2,s,N) / 2^{2(k-1)}, exact by exponent subtraction.
RhoValue omega_two_reduced(const Natural& k, const Natural& s, const Int& n,
                           const EvalContext& ctx) {
  RhoValue om = omega(k, 2, s, n, ctx);
  if (om.is_zero()) return om;
  tick(ctx.ops);
  return om.divided_by_power(2 * (k - 1));
}

// Omega times a base value, skipping the base value when the sum is empty.
template <class Base>
RhoValue omega_times(RhoValue om, Base&& base) {
  if (om.is_zero()) return om;
  return om * base();
}

unsigned small_residue(const Natural& v) { return static_cast<unsigned>(mpz_get_ui(v.get_mpz_t())); }

}  // namespace

RhoValue omega(const Natural& k, const Natural& p, const Natural& s, const Int& n,
               const EvalContext& ctx) {
  if (sgn(n) < 0) return RhoValue(p);
  tick(ctx.ops, 3);
  if (k == 1) return RhoValue::geometric(p, 1, 0, 1, n + 1);
  if (k == 2) return RhoValue::power(p, n + 1, s - 1);
  // Reindexed with j = N - i so all exponents stay nonnegative.
  const Int exp0 = (s - 1) * (k - 1) - n * (k - 2);
  if (sgn(exp0) < 0) throw std::logic_error("Omega called outside its summation range");
  return RhoValue::geometric(p, 1, exp0, k - 2, n + 1);
}

RhoValue rho_odd_pp(const PrimePowerQuery& q, const EvalContext& ctx) {
  validate(q);
  if (q.p == 2) throw Error(Errc::invalid_input, "rho_odd_pp needs an odd prime");
  if (!q.lambda) throw Error(Errc::invalid_input, "rho_odd_pp needs lambda != 0");
  const Natural& k = q.k;
  const Natural& p = q.p;
  const Natural& s = q.s;
  const Natural& r = q.lambda->r;
  const auto unit_zero = [&] { return odd_unit_zero(k, p, ctx); };
  tick(ctx.ops, 2);
  if (is_odd(r)) return omega_times(omega(k, p, s, Int(r - 1) / 2, ctx), unit_zero);
  RhoValue out = omega_times(omega(k, p, s, (Int(r) - 2) / 2, ctx), unit_zero);
  const Natural top = k * (r / 2) + (s - r - 1) * (k - 1);
  tick(ctx.ops, 4);
  out += rho_odd_prime(k, q.lambda->unit_residue, p, ctx).scaled(1, top);
  return out;
}

RhoValue rho_odd_zero_pp(const Natural& k, const Natural& p, const Natural& s,
                         const EvalContext& ctx) {
  validate(PrimePowerQuery{k, p, s, std::nullopt});
  if (p == 2) throw Error(Errc::invalid_input, "rho_odd_zero_pp needs an odd prime");
  RhoValue out = omega(k, p, s, Int(s - 1) / 2, ctx) * odd_unit_zero(k, p, ctx);
  tick(ctx.ops, 3);
  out += RhoValue::power(p, 1, k * (s / 2));
  return out;
}

RhoValue rho_two_pp(const PrimePowerQuery& q, const EvalContext& ctx) {
  validate(q);
  if (q.p != 2) throw Error(Errc::invalid_input, "rho_two_pp needs p = 2");
  if (!q.lambda) throw Error(Errc::invalid_input, "rho_two_pp needs lambda != 0");
  if (q.s < 3) throw Error(Errc::invalid_input, "rho_two_pp needs s >= 3; use rho_two_small");
  const Natural& k = q.k;
  const Natural& s = q.s;
  const Natural& r = q.lambda->r;
  const Natural& unit = q.lambda->unit_residue;
  const Natural gap = s - r;
  // The all-zero-residue contributions sum to Omega / 2^{2(k-1)} * rho1_{k,0}(8).
  const auto unit_zero8 = [&] { return rho1_base(k, 0, 2, 3, ctx); };
  tick(ctx.ops, 2);

  if (is_odd(r)) {
    RhoValue out = omega_times(omega_two_reduced(k, s, (Int(r) - 3) / 2, ctx), unit_zero8);
    const Natural lead = k * ((r - 1) / 2);
    tick(ctx.ops, 4);
    if (gap > 1) {
      const unsigned lam = small_residue(2 * unit % 8);
      out += rho_two_small(k, lam, 3, ctx).scaled(1, lead + (gap - 2) * (k - 1));
    } else {
      const unsigned lam = small_residue(2 * unit % 4);
      out += rho_two_small(k, lam, 2, ctx).scaled(1, lead);
    }
    return out;
  }

  RhoValue out = omega_times(omega_two_reduced(k, s, (Int(r) - 4) / 2, ctx), unit_zero8);
  if (r >= 2) {
    // i = r/2 - 1 term, where lambda / 4^i = 4 lambda' = 4 (mod 8).
    const Natural e = k * (r / 2 - 1) + (s - r - 1) * (k - 1);
    tick(ctx.ops, 5);
    out += rho1_base(k, 4, 2, 3, ctx).scaled(1, e);
  }
  const Natural lead = k * (r / 2);
  tick(ctx.ops, 3);
  if (gap > 2) {
    out += rho_two_small(k, small_residue(unit % 8), 3, ctx).scaled(1, lead + (gap - 3) * (k - 1));
  } else if (gap == 2) {
    out += rho_two_small(k, small_residue(unit % 4), 2, ctx).scaled(1, lead);
  } else {
    out += rho_two_small(k, 1, 1, ctx).scaled(1, lead);
  }
  return out;
}

RhoValue rho_two_zero_pp(const Natural& k, const Natural& s, const EvalContext& ctx) {
  validate(PrimePowerQuery{k, 2, s, std::nullopt});
  if (s < 3) throw Error(Errc::invalid_input, "rho_two_zero_pp needs s >= 3; use rho_two_small");
  const RhoValue unit_zero8 = rho1_base(k, 0, 2, 3, ctx);
  tick(ctx.ops, 2);
  if (is_odd(s)) {
    RhoValue out = omega_two_reduced(k, s, (Int(s) - 3) / 2, ctx) * unit_zero8;
    // 2^{k(s-1)/2} * (rho1_{k,0}(2) + 1) = 2^{k(s-1)/2} * 2^{k-1}
    tick(ctx.ops, 3);
    out += RhoValue::power(2, 1, k * ((s - 1) / 2) + k - 1);
    return out;
  }
  RhoValue out = omega_two_reduced(k, s, (Int(s) - 4) / 2, ctx) * unit_zero8;
  tick(ctx.ops, 4);
  out += rho1_base(k, 0, 2, 2, ctx).scaled(1, k * ((s - 2) / 2));
  out += RhoValue::power(2, 1, k * (s / 2));
  return out;
}

RhoValue rho_prime_power(const PrimePowerQuery& q, const EvalContext& ctx) {
  validate(q);
  if (q.p == 2) {
    if (q.s <= 3) {
      const unsigned t = small_residue(q.s);
      return rho_two_small(q.k, small_residue(lambda_residue(q, t)), t, ctx);
    }
    return q.lambda ? rho_two_pp(q, ctx) : rho_two_zero_pp(q.k, q.s, ctx);
  }
  if (q.s == 1) return rho_odd_prime(q.k, lambda_residue(q, 1), q.p, ctx);
  return q.lambda ? rho_odd_pp(q, ctx) : rho_odd_zero_pp(q.k, q.p, q.s, ctx);
}

RhoValue rho_prime_power(const Natural& k, const Natural& p, const Natural& s,
                         const Natural& lambda, const EvalContext& ctx) {
  return rho_prime_power(make_query(k, p, s, lambda), ctx);
}

}  // namespace rho
