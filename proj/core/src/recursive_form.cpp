#include "rho/recursive_form.hpp"

#include <array>
#include <optional>

#include "rho/error.hpp"

namespace rho {
namespace {

std::uint64_t checked_exponent(const Natural& s) {
  if (!fits_u64(s) || to_u64(s) > kMaxRecursiveExponent) {
    throw Error(Errc::budget_exceeded, "recursive engine is O(s); s = " + to_decimal(s) +
                                           " is beyond its budget");
  }
  return to_u64(s);
}

// 2^e * unit mod 2^t, with t <= 3.
unsigned two_adic_residue(std::uint64_t e, const Natural& unit, unsigned t) {
  if (e >= t) return 0;
  return static_cast<unsigned>(((mod_small(unit, 8) << e) % (1u << t)));
}

// rho1 at 8 for each residue, built on first use.
class Rho1At8 {
 public:
  Rho1At8(const Natural& k, const EvalContext& ctx) : k_(k), ctx_(ctx) {}
  const RhoValue& operator[](unsigned lambda) {
    auto& slot = cache_[lambda];
    if (!slot) slot = rho1_base(k_, lambda, 2, 3, ctx_);
    return *slot;
  }

 private:
  const Natural& k_;
  const EvalContext& ctx_;
  std::array<std::optional<RhoValue>, 8> cache_;
};

// Odd p: sum_{i=0}^{top} p^{k i + (s-2i-1)(k-1)} rho1_{k, lambda/p^{2i}}(p),
// where lambda/p^{2i} is 0 mod p while 2i < r.
RhoValue odd_sum(const PrimePowerQuery& q, std::uint64_t top, std::optional<std::uint64_t> r,
                 const EvalContext& ctx) {
  const Natural& k = q.k;
  const Natural& p = q.p;
  const RhoValue at_zero = rho1_base(k, 0, p, 1, ctx);
  std::optional<RhoValue> at_unit;
  if (q.lambda) at_unit = rho1_base(k, q.lambda->unit_residue, p, 1, ctx);
  RhoAccumulator acc(p);
  for (std::uint64_t i = 0; i <= top; ++i) {
    const Natural ii = to_natural(i);
    const Natural e = k * ii + (q.s - 2 * ii - 1) * (k - 1);
    const bool unit_left = r.has_value() && 2 * i == *r;
    acc.add_scaled(unit_left ? *at_unit : at_zero, 1, e);
    tick(ctx.ops, 6);
  }
  return std::move(acc).finish();
}

RhoValue rec_odd(const PrimePowerQuery& q, const EvalContext& ctx) {
  const std::uint64_t s = checked_exponent(q.s);
  if (q.lambda) {
    const std::uint64_t r = to_u64(q.lambda->r);
    return odd_sum(q, r / 2, r, ctx);
  }
  RhoValue out = odd_sum(q, (s - 1) / 2, std::nullopt, ctx);
  tick(ctx.ops, 2);
  out += RhoValue::power(q.p, 1, q.k * to_natural(s / 2));
  return out;
}

// p = 2: terms with at least three factors of 2 left in the modulus go
// through rho1 at 8; the final term sits at 2^{s-2h} with s - 2h possibly < 3.
RhoValue rec_two(const PrimePowerQuery& q, const EvalContext& ctx) {
  const Natural& k = q.k;
  const std::uint64_t s = checked_exponent(q.s);
  Rho1At8 at8(k, ctx);
  RhoAccumulator acc(2);

  const auto lifted_term = [&](std::uint64_t i, unsigned residue8) {
    const Natural ii = to_natural(i);
    const Natural e = k * ii + (q.s - 2 * ii - 3) * (k - 1);
    acc.add_scaled(at8[residue8], 1, e);
    tick(ctx.ops, 6);
  };

  if (q.lambda) {
    const std::uint64_t r = to_u64(q.lambda->r);
    const Natural& unit = q.lambda->unit_residue;
    const std::uint64_t h = r / 2;
    for (std::uint64_t i = 0; i < h; ++i) lifted_term(i, two_adic_residue(r - 2 * i, unit, 3));
    const std::uint64_t s_left = s - 2 * h;
    const std::uint64_t r_left = r - 2 * h;
    const Natural lead = k * to_natural(h);
    if (s_left >= 3) {
      const Natural e = lead + to_natural(s_left - 3) * (k - 1);
      acc.add_scaled(at8[two_adic_residue(r_left, unit, 3)], 1, e);
    } else {
      const auto t = static_cast<unsigned>(s_left);
      acc.add_scaled(rho1_base(k, two_adic_residue(r_left, unit, t), 2, t, ctx), 1, lead);
    }
    tick(ctx.ops, 4);
    return std::move(acc).finish();
  }

  const std::uint64_t g = (s - 1) / 2;
  for (std::uint64_t i = 0; i < g; ++i) {
    const std::uint64_t left = s - 2 * i;
    lifted_term(i, left >= 3 ? 0u : (1u << left) % 8u);
  }
  const auto t = static_cast<unsigned>(s - 2 * g);
  acc.add_scaled(rho1_base(k, 0, 2, t, ctx), 1, k * to_natural(g));
  acc.add(RhoValue::power(2, 1, k * to_natural(s / 2)));
  tick(ctx.ops, 5);
  return std::move(acc).finish();
}

}  // namespace

RhoValue rho1_lift(const PrimePowerQuery& q, const EvalContext& ctx) {
  validate(q);
  tick(ctx.ops, 3);
  if (q.p == 2) {
    if (q.s < 3) throw Error(Errc::invalid_input, "rho1_lift at 2^s needs s >= 3; use rho1_base");
    return rho1_base(q.k, lambda_residue(q, 3), 2, 3, ctx).scaled(1, (q.s - 3) * (q.k - 1));
  }
  return rho1_base(q.k, lambda_residue(q, 1), q.p, 1, ctx).scaled(1, (q.s - 1) * (q.k - 1));
}

RhoValue rho1_lift(const Natural& k, const Natural& p, const Natural& s, const Natural& lambda,
                   const EvalContext& ctx) {
  return rho1_lift(make_query(k, p, s, lambda), ctx);
}

DescentKind rho2_descend(const PrimePowerQuery& q) {
  if (!q.lambda) {
    if (q.s == 1) return DescentKind::one;
    if (q.s == 2) return DescentKind::p_to_k;
    return DescentKind::recurse;
  }
  if (q.s >= 3 && q.lambda->r >= 2) return DescentKind::recurse;
  return DescentKind::zero;
}

DescentKind rho2_descend(const Natural& k, const Natural& p, const Natural& s,
                         const Natural& lambda) {
  return rho2_descend(make_query(k, p, s, lambda));
}

RhoValue rho_rec(const PrimePowerQuery& q, const EvalContext& ctx) {
  validate(q);
  return q.p == 2 ? rec_two(q, ctx) : rec_odd(q, ctx);
}

RhoValue rho_rec(const Natural& k, const Natural& p, const Natural& s, const Natural& lambda,
                 const EvalContext& ctx) {
  return rho_rec(make_query(k, p, s, lambda), ctx);
}

SplitCounts split_counts(const PrimePowerQuery& q, const EvalContext& ctx) {
  validate(q);
  RhoValue rho1 = (q.p == 2 && q.s < 3)
                      ? rho1_base(q.k, lambda_residue(q, static_cast<unsigned>(to_u64(q.s))), 2,
                                  static_cast<unsigned>(to_u64(q.s)), ctx)
                      : rho1_lift(q, ctx);
  RhoValue rho2(q.p);
  switch (rho2_descend(q)) {
    case DescentKind::one:
      rho2 = RhoValue::constant(q.p, 1);
      break;
    case DescentKind::p_to_k:
      rho2 = RhoValue::power(q.p, 1, q.k);
      break;
    case DescentKind::recurse:
      rho2 = rho_rec(descend(q), ctx).scaled(1, q.k);
      break;
    case DescentKind::zero:
      break;
  }
  return {std::move(rho1), std::move(rho2)};
}

}  // namespace rho
