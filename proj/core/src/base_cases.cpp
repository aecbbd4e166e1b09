#include "rho/base_cases.hpp"

#include <algorithm>
#include <utility>
#include <stdexcept>
#include <string>

#include "rho/error.hpp"

namespace rho {
namespace {

void require_k(const Natural& k) {
  if (k < 1) throw Error(Errc::invalid_input, "k must be >= 1");
}

TwoAdicTable build_default_table() {
  using enum Trig;
  TwoAdicTable t;
  // 4^{k-1} +/- 2^{3k/2-1} cos|sin(k pi/4)
  t.mod4[0] = {{+1, 4, -4, one, 0, 0}, {+1, 3, -2, cos, 1, 0}};
  t.mod4[1] = {{+1, 4, -4, one, 0, 0}, {+1, 3, -2, sin, 1, 0}};
  t.mod4[2] = {{+1, 4, -4, one, 0, 0}, {-1, 3, -2, cos, 1, 0}};
  t.mod4[3] = {{+1, 4, -4, one, 0, 0}, {-1, 3, -2, sin, 1, 0}};
  // 8^{k-1} plus 2^{5k/2-2} and 2^{2k-2} trig corrections.
  t.mod8[0] = {{+1, 6, -6, one, 0, 0}, {+1, 4, -4, cos, 1, 0},
               {+1, 5, -4, cos, 1, 0}, {+1, 4, -4, cos, 3, 0}};
  t.mod8[1] = {{+1, 6, -6, one, 0, 0}, {+1, 5, -4, sin, 1, 0},
               {+1, 4, -4, sin, 1, 1}, {-1, 4, -4, cos, 3, 1}};
  t.mod8[2] = {{+1, 6, -6, one, 0, 0}, {-1, 5, -4, cos, 1, 0},
               {+1, 4, -4, sin, 1, 0}, {-1, 4, -4, sin, 3, 0}};
  t.mod8[3] = {{+1, 6, -6, one, 0, 0}, {-1, 5, -4, sin, 1, 0},
               {-1, 4, -4, cos, 1, 1}, {-1, 4, -4, cos, 3, 3}};
  t.mod8[4] = {{+1, 6, -6, one, 0, 0}, {-1, 4, -4, cos, 1, 0},
               {+1, 5, -4, cos, 1, 0}, {-1, 4, -4, cos, 3, 0}};
  t.mod8[5] = {{+1, 6, -6, one, 0, 0}, {+1, 5, -4, sin, 1, 0},
               {-1, 4, -4, sin, 1, 1}, {+1, 4, -4, cos, 3, 1}};
  t.mod8[6] = {{+1, 6, -6, one, 0, 0}, {-1, 5, -4, cos, 1, 0},
               {-1, 4, -4, sin, 1, 0}, {+1, 4, -4, sin, 3, 0}};
  t.mod8[7] = {{+1, 6, -6, one, 0, 0}, {-1, 5, -4, sin, 1, 0},
               {-1, 4, -4, sin, 3, 1}, {+1, 4, -4, cos, 1, 1}};
  return t;
}

// Sums sign * 2^{half/2} over the table row; irrational sqrt(2) parts must
// cancel exactly.
RhoValue evaluate_row(const std::vector<TrigTerm>& row, const Natural& k, OpCounter* ops) {
  const unsigned k_mod8 = mod_small(k, 8);
  // Rows have at most four terms, so a flat list beats a map here.
  std::vector<std::pair<Int, int>> by_half_exp;
  for (const TrigTerm& term : row) {
    unsigned phase = 0;
    if (term.trig != Trig::one) {
      const int raw = term.phase_k * static_cast<int>(k_mod8) + term.phase_c;
      phase = static_cast<unsigned>(((raw % 8) + 8) % 8);
    }
    const TwoAdicCoeff c = trig_value(term.trig, phase);
    if (c.sign == 0) continue;
    Int half = term.k_half * k;
    half += term.const_half + c.half_exp;
    tick(ops, 2);
    auto it = std::find_if(by_half_exp.begin(), by_half_exp.end(),
                           [&](const auto& e) { return e.first == half; });
    if (it == by_half_exp.end()) {
      by_half_exp.emplace_back(std::move(half), term.sign * c.sign);
    } else {
      it->second += term.sign * c.sign;
    }
  }
  std::vector<Term> terms;
  for (auto& [half, coeff] : by_half_exp) {
    if (coeff == 0) continue;
    if (is_odd(half)) {
      throw std::logic_error("two-adic table leaves an irrational sqrt(2) term at k mod 8 = " +
                             std::to_string(k_mod8));
    }
    if (sgn(half) < 0) throw std::logic_error("two-adic table produced a fractional power of 2");
    mpz_divexact_ui(half.get_mpz_t(), half.get_mpz_t(), 2);
    terms.push_back(PowerTerm{coeff, std::move(half)});
  }
  return RhoValue::from_terms(2, std::move(terms));
}

}  // namespace

const TwoAdicTable& default_two_adic_table() {
  static const TwoAdicTable table = build_default_table();
  return table;
}

TwoAdicCoeff trig_value(Trig trig, unsigned j) {
  j %= 8;
  if (trig == Trig::one) return {1, 0};
  // sin(x) = cos(x - pi/2)
  if (trig == Trig::sin) j = (j + 6) % 8;
  switch (j) {
    case 0: return {+1, 0};
    case 1: return {+1, -1};
    case 2: return {0, 0};
    case 3: return {-1, -1};
    case 4: return {-1, 0};
    case 5: return {-1, -1};
    case 6: return {0, 0};
    default: return {+1, -1};
  }
}

LebesgueAux lebesgue_aux(const Natural& k, const Natural& p) {
  LebesgueAux aux;
  const bool p3 = mod_small(p, 4) == 3;
  const unsigned k4 = mod_small(k, 4);
  if (is_odd(k)) {
    // (-1)^{(p-1)(k-1)/4} is -1 exactly when p = 3 and k = 3 (mod 4).
    aux.t_sign = (p3 && k4 == 3) ? -1 : 1;
    aux.t_exp = (k - 1) / 2;
  } else {
    // (-1)^{k(p-1)/4} is -1 exactly when p = 3 and k = 2 (mod 4).
    aux.l_sign = (p3 && k4 == 2) ? -1 : 1;
    aux.l_exp = (k - 2) / 2;
  }
  return aux;
}

RhoValue rho_odd_prime(const Natural& k, const Natural& lambda_mod_p, const Natural& p,
                       const EvalContext& ctx) {
  require_k(k);
  if (p < 3 || is_even(p)) {
    throw Error(Errc::invalid_input, "rho_odd_prime needs an odd prime, got " + to_decimal(p));
  }
  if (sgn(lambda_mod_p) < 0 || lambda_mod_p >= p) {
    throw Error(Errc::out_of_range, "lambda must be reduced mod p");
  }
  const int symbol = legendre(lambda_mod_p, p);
  const LebesgueAux aux = lebesgue_aux(k, p);
  tick(ctx.ops, 4);
  std::vector<Term> terms{PowerTerm{1, k - 1}};
  if (is_odd(k)) {
    terms.push_back(PowerTerm{symbol * aux.t_sign, aux.t_exp});
  } else {
    terms.push_back(PowerTerm{-aux.l_sign, aux.l_exp});
    if (symbol == 0) terms.push_back(PowerTerm{aux.l_sign, aux.l_exp + 1});
  }
  return RhoValue::from_terms(p, std::move(terms));
}

RhoValue rho_two_small(const Natural& k, unsigned lambda, unsigned t, const EvalContext& ctx) {
  require_k(k);
  if (t < 1 || t > 3) throw Error(Errc::invalid_input, "rho_two_small needs t in {1,2,3}");
  if (lambda >= (1u << t)) throw Error(Errc::out_of_range, "lambda must be < 2^t");
  switch (t) {
    case 1:
      tick(ctx.ops);
      return RhoValue::power(2, 1, k - 1);
    case 2:
      return evaluate_row(ctx.two_adic->mod4[lambda], k, ctx.ops);
    default:
      return evaluate_row(ctx.two_adic->mod8[lambda], k, ctx.ops);
  }
}

RhoValue rho1_base(const Natural& k, const Natural& lambda, const Natural& p, unsigned t,
                   const EvalContext& ctx) {
  require_k(k);
  if (p == 2) {
    if (t < 1 || t > 3) throw Error(Errc::invalid_input, "rho1_base at 2^t needs t in {1,2,3}");
    if (sgn(lambda) < 0 || lambda >= (1u << t)) {
      throw Error(Errc::out_of_range, "lambda must be reduced mod 2^t");
    }
    const unsigned l = mpz_get_ui(lambda.get_mpz_t());
    RhoValue full = rho_two_small(k, l, t, ctx);
    tick(ctx.ops);
    // Subtract the all-even tuples: 1 at 2, 2^k at 4, 2^{2k-1} at 8 (lambda = 0, 4).
    if (t == 1 && l == 0) return full - RhoValue::constant(2, 1);
    if (t == 2 && l == 0) return full - RhoValue::power(2, 1, k);
    if (t == 3 && (l == 0 || l == 4)) return full - RhoValue::power(2, 1, 2 * k - 1);
    return full;
  }
  if (t != 1) throw Error(Errc::invalid_input, "rho1_base at an odd prime needs t = 1");
  RhoValue full = rho_odd_prime(k, lambda, p, ctx);
  tick(ctx.ops);
  if (sgn(lambda) == 0) return full - RhoValue::constant(p, 1);
  return full;
}

}  // namespace rho
