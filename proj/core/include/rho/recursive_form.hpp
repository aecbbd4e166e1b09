#pragma once

// O(s) engine: evaluates the explicit summations obtained by splitting the
// solution set into tuples with some unit coordinate (rho1) and tuples with
// every coordinate divisible by p (rho2), term by term. It shares only the
// base cases with the closed-form engine and exists to cross-check it.

#include <cstdint>

#include "rho/base_cases.hpp"
#include "rho/query.hpp"
#include "rho/rho_value.hpp"

namespace rho {

struct SplitCounts {
  RhoValue rho1;
  RhoValue rho2;
};

enum class DescentKind {
  one,      // s = 1, lambda = 0: only the zero tuple
  p_to_k,   // s = 2, lambda = 0: any multiple of p in each coordinate
  recurse,  // s >= 3, p^2 | lambda: p^k * rho_{k,lambda/p^2}(p^{s-2})
  zero,
};

// Largest s the O(s) engine accepts.
inline constexpr std::uint64_t kMaxRecursiveExponent = 100'000'000;

// rho1 at p^s lifted from the base modulus (p, or 8 when p = 2).
RhoValue rho1_lift(const PrimePowerQuery& q, const EvalContext& ctx = {});
RhoValue rho1_lift(const Natural& k, const Natural& p, const Natural& s, const Natural& lambda,
                   const EvalContext& ctx = {});

DescentKind rho2_descend(const PrimePowerQuery& q);
DescentKind rho2_descend(const Natural& k, const Natural& p, const Natural& s,
                         const Natural& lambda);

RhoValue rho_rec(const PrimePowerQuery& q, const EvalContext& ctx = {});
RhoValue rho_rec(const Natural& k, const Natural& p, const Natural& s, const Natural& lambda,
                 const EvalContext& ctx = {});

// rho1 and rho2 separately; rho2 recurses through rho_rec.
SplitCounts split_counts(const PrimePowerQuery& q, const EvalContext& ctx = {});

}  // namespace rho
