#include "rho/rho_value.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "rho/error.hpp"

namespace rho {
namespace {

Natural top_exponent(const Term& t) {
  if (const auto* pw = std::get_if<PowerTerm>(&t)) return pw->exp;
  const auto& g = std::get<GeomTerm>(t);
  return g.exp0 + g.step * (g.count - 1);
}

const Int& coefficient(const Term& t) {
  return std::visit([](const auto& x) -> const Int& { return x.coeff; }, t);
}

double log10_abs(const Int& v) {
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * std::log10(2.0);
}

double to_double(const Natural& v) { return mpz_get_d(v.get_mpz_t()); }

unsigned long to_ulong_checked(const Natural& v) {
  if (!mpz_fits_ulong_p(v.get_mpz_t())) {
    throw Error(Errc::too_large, "exponent " + to_decimal(v) + " exceeds machine range");
  }
  return mpz_get_ui(v.get_mpz_t());
}

Natural pow_exact(const Natural& p, const Natural& e) {
  Natural out;
  mpz_pow_ui(out.get_mpz_t(), p.get_mpz_t(), to_ulong_checked(e));
  return out;
}

}  // namespace

RhoValue::RhoValue(Natural base_p) : base_(std::move(base_p)) {
  if (base_ < 2) throw Error(Errc::invalid_prime, "RhoValue base must be >= 2");
}

RhoValue RhoValue::constant(const Natural& p, const Int& c) { return power(p, c, 0); }

RhoValue RhoValue::power(const Natural& p, const Int& coeff, const Natural& exp) {
  RhoValue v(p);
  v.terms_.push_back(PowerTerm{coeff, exp});
  v.normalize();
  return v;
}

RhoValue RhoValue::geometric(const Natural& p, const Int& coeff, const Natural& exp0,
                             const Natural& step, const Natural& count) {
  RhoValue v(p);
  v.terms_.push_back(GeomTerm{coeff, exp0, step, count});
  v.normalize();
  return v;
}

RhoValue RhoValue::from_terms(const Natural& p, std::vector<Term> terms) {
  RhoValue v(p);
  v.terms_ = std::move(terms);
  v.normalize();
  return v;
}

bool RhoValue::has_geometric() const noexcept {
  for (const auto& t : terms_) {
    if (std::holds_alternative<GeomTerm>(t)) return true;
  }
  return false;
}

void RhoValue::normalize() {
  // Canonical order: powers by descending exponent, then geometric terms by
  // descending (exp0, step, count). Equal keys merge.
  std::vector<Term> kept;
  kept.reserve(terms_.size());
  for (auto& t : terms_) {
    if (auto* pw = std::get_if<PowerTerm>(&t)) {
      if (sgn(pw->exp) < 0) throw std::logic_error("negative exponent in RhoValue");
      kept.push_back(std::move(t));
      continue;
    }
    auto& g = std::get<GeomTerm>(t);
    if (sgn(g.exp0) < 0 || sgn(g.step) < 0 || sgn(g.count) < 0) {
      throw std::logic_error("negative field in geometric term");
    }
    if (sgn(g.count) == 0) continue;
    if (g.count == 1) {
      kept.push_back(PowerTerm{std::move(g.coeff), std::move(g.exp0)});
    } else if (sgn(g.step) == 0) {
      kept.push_back(PowerTerm{g.coeff * g.count, std::move(g.exp0)});
    } else {
      kept.push_back(std::move(t));
    }
  }
  const auto before = [](const Term& a, const Term& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    if (const auto* pa = std::get_if<PowerTerm>(&a)) return pa->exp > std::get<PowerTerm>(b).exp;
    const auto& ga = std::get<GeomTerm>(a);
    const auto& gb = std::get<GeomTerm>(b);
    return std::tie(gb.exp0, gb.step, gb.count) < std::tie(ga.exp0, ga.step, ga.count);
  };
  const auto same_key = [&](const Term& a, const Term& b) { return !before(a, b) && !before(b, a); };
  std::sort(kept.begin(), kept.end(), before);

  terms_.clear();
  for (auto& t : kept) {
    if (!terms_.empty() && same_key(terms_.back(), t)) {
      std::visit([&](auto& dst) { dst.coeff += coefficient(t); }, terms_.back());
    } else {
      terms_.push_back(std::move(t));
    }
  }
  std::erase_if(terms_, [](const Term& t) { return sgn(coefficient(t)) == 0; });
}

RhoValue& RhoValue::operator+=(const RhoValue& other) {
  if (other.base_ != base_) throw std::logic_error("adding RhoValues over different bases");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  normalize();
  return *this;
}

RhoValue& RhoValue::operator-=(const RhoValue& other) {
  return *this += other.scaled(-1, 0);
}

RhoValue RhoValue::scaled(const Int& coeff, const Natural& exp) const {
  if (sgn(exp) < 0) throw std::logic_error("negative shift in RhoValue::scaled");
  RhoValue out(base_);
  if (sgn(coeff) == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (const auto* pw = std::get_if<PowerTerm>(&t)) {
      out.terms_.push_back(PowerTerm{pw->coeff * coeff, pw->exp + exp});
    } else {
      const auto& g = std::get<GeomTerm>(t);
      out.terms_.push_back(GeomTerm{g.coeff * coeff, g.exp0 + exp, g.step, g.count});
    }
  }
  // A uniform shift keeps the terms in normal form.
  return out;
}

RhoValue RhoValue::divided_by_power(const Natural& exp) const {
  RhoValue out(base_);
  for (const auto& t : terms_) {
    if (const auto* pw = std::get_if<PowerTerm>(&t)) {
      if (pw->exp < exp) throw std::logic_error("inexact symbolic division by p^e");
      out.terms_.push_back(PowerTerm{pw->coeff, pw->exp - exp});
    } else {
      const auto& g = std::get<GeomTerm>(t);
      if (g.exp0 < exp) throw std::logic_error("inexact symbolic division by p^e");
      out.terms_.push_back(GeomTerm{g.coeff, g.exp0 - exp, g.step, g.count});
    }
  }
  out.normalize();
  return out;
}

RhoValue operator*(const RhoValue& a, const RhoValue& b) {
  if (a.base_ != b.base_) throw std::logic_error("multiplying RhoValues over different bases");
  if (a.has_geometric() && b.has_geometric()) {
    throw std::logic_error("product of two geometric series is not representable");
  }
  const RhoValue& geo = a.has_geometric() ? a : b;
  const RhoValue& flat = a.has_geometric() ? b : a;
  RhoValue out(a.base_);
  for (const auto& ft : flat.terms_) {
    const auto& f = std::get<PowerTerm>(ft);
    RhoValue part = geo.scaled(f.coeff, f.exp);
    out.terms_.insert(out.terms_.end(), part.terms_.begin(), part.terms_.end());
  }
  out.normalize();
  return out;
}

void RhoAccumulator::add(const RhoValue& v) {
  if (v.base() != base_) throw std::logic_error("accumulating RhoValues over different bases");
  terms_.insert(terms_.end(), v.terms().begin(), v.terms().end());
}

void RhoAccumulator::add_scaled(const RhoValue& v, const Int& coeff, const Natural& exp) {
  if (v.base() != base_) throw std::logic_error("accumulating RhoValues over different bases");
  for (const auto& t : v.terms()) {
    if (const auto* pw = std::get_if<PowerTerm>(&t)) {
      terms_.push_back(PowerTerm{pw->coeff * coeff, pw->exp + exp});
    } else {
      const auto& g = std::get<GeomTerm>(t);
      terms_.push_back(GeomTerm{g.coeff * coeff, g.exp0 + exp, g.step, g.count});
    }
  }
}

RhoValue RhoAccumulator::finish() && {
  return RhoValue::from_terms(base_, std::move(terms_));
}

double log10_upper_bound(const RhoValue& v) {
  if (v.is_zero()) return -std::numeric_limits<double>::infinity();
  const double log_p = std::log10(to_double(v.base()));
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& t : v.terms()) {
    // A geometric tail sum_{j<n} p^{j d} is below 2 p^{(n-1) d} for p >= 2.
    const double weight = std::holds_alternative<GeomTerm>(t) ? std::log10(2.0) : 0.0;
    const double term = log10_abs(coefficient(t)) + weight + to_double(top_exponent(t)) * log_p;
    best = std::max(best, term);
  }
  if (v.terms().size() > 1) best += std::log10(static_cast<double>(v.terms().size()));
  return best;
}

Natural digits_from_log10(double log10_bound) {
  if (std::isinf(log10_bound) && log10_bound < 0) return 1;
  if (log10_bound < 0) return 1;
  const double padded = log10_bound + 1e-12 * std::max(1.0, log10_bound);
  Natural out;
  mpz_set_d(out.get_mpz_t(), std::floor(padded));
  return out + 1;
}

Natural digits_estimate(const RhoValue& v) { return digits_from_log10(log10_upper_bound(v)); }

Natural eval_exact(const RhoValue& v, std::uint64_t limit_bits) {
  if (v.is_zero()) return 0;
  const double log10_bound = log10_upper_bound(v);
  const double bits = log10_bound / std::log10(2.0);
  if (bits > static_cast<double>(limit_bits)) {
    throw Error(Errc::too_large, "exact value has about " + to_decimal(digits_from_log10(log10_bound)) +
                                     " decimal digits, above the exact-render limit of " +
                                     std::to_string(limit_bits) + " bits");
  }
  const Natural& p = v.base();
  Int total = 0;
  for (const auto& t : v.terms()) {
    if (const auto* pw = std::get_if<PowerTerm>(&t)) {
      total += pw->coeff * pow_exact(p, pw->exp);
      continue;
    }
    const auto& g = std::get<GeomTerm>(t);
    const Natural denom = pow_exact(p, g.step) - 1;
    Natural numer = pow_exact(p, g.step * g.count) - 1;
    if (mpz_divisible_p(numer.get_mpz_t(), denom.get_mpz_t()) == 0) {
      throw std::logic_error("geometric series division left a remainder");
    }
    mpz_divexact(numer.get_mpz_t(), numer.get_mpz_t(), denom.get_mpz_t());
    total += g.coeff * pow_exact(p, g.exp0) * numer;
  }
  if (sgn(total) < 0) throw std::logic_error("RhoValue evaluated to a negative count");
  return total;
}

Natural eval_mod(const RhoValue& v, const Natural& m, OpCounter* ops) {
  if (sgn(m) <= 0) throw Error(Errc::invalid_modulus, "modulus must be >= 1");
  mpz_srcptr p = v.base().get_mpz_t();
  mpz_srcptr mod = m.get_mpz_t();
  Natural acc = 0;
  Natural term;
  Natural scratch;
  for (const auto& t : v.terms()) {
    if (const auto* pw = std::get_if<PowerTerm>(&t)) {
      mpz_powm(term.get_mpz_t(), p, pw->exp.get_mpz_t(), mod);
      mpz_mul(term.get_mpz_t(), term.get_mpz_t(), pw->coeff.get_mpz_t());
      tick(ops, 3);
    } else {
      const auto& g = std::get<GeomTerm>(t);
      mpz_powm(scratch.get_mpz_t(), p, g.step.get_mpz_t(), mod);
      term = geom_sum_mod(scratch, g.count, m);
      mpz_powm(scratch.get_mpz_t(), p, g.exp0.get_mpz_t(), mod);
      mpz_mul(term.get_mpz_t(), term.get_mpz_t(), scratch.get_mpz_t());
      mpz_mod(term.get_mpz_t(), term.get_mpz_t(), mod);
      mpz_mul(term.get_mpz_t(), term.get_mpz_t(), g.coeff.get_mpz_t());
      tick(ops, 5);
    }
    mpz_add(acc.get_mpz_t(), acc.get_mpz_t(), term.get_mpz_t());
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), mod);
  }
  return acc;
}

}  // namespace rho
