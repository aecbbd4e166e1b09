#include "rho/composer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "rho/closed_form.hpp"
#include "rho/error.hpp"
#include "rho/recursive_form.hpp"
#include "rho/reference.hpp"

namespace rho {
namespace {

constexpr std::uint64_t kTrialDivisionLimit = 1'000'000;
constexpr std::uint64_t kRhoIterationBudget = std::uint64_t{1} << 22;

// Brent's cycle finding on x -> x^2 + c with batched gcds.
std::optional<Natural> brent_split(const Natural& n, unsigned long c) {
  Natural y = 2, x, ys, q = 1, g = 1;
  const std::uint64_t batch = 128;
  std::uint64_t r = 1;
  std::uint64_t spent = 0;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t steps = std::min(batch, r - k);
      for (std::uint64_t i = 0; i < steps; ++i) {
        y = (y * y + c) % n;
        q = q * abs(x - y) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += steps;
    }
    r *= 2;
    spent += r;
    if (spent > kRhoIterationBudget) return std::nullopt;
  }
  if (g == n) {
    do {
      ys = (ys * ys + c) % n;
      Natural diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  if (g == n) return std::nullopt;
  return g;
}

void split_composite(const Natural& n, std::map<Natural, Natural>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out[n] += 1;
    return;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 128) {
    throw Error(Errc::factorization_give_up,
                "cannot factor a composite above 2^128 with trial division and rho: " + to_decimal(n));
  }
  for (unsigned long c = 1; c < 24; ++c) {
    if (auto d = brent_split(n, c)) {
      split_composite(*d, out);
      split_composite(n / *d, out);
      return;
    }
  }
  throw Error(Errc::factorization_give_up, "rho budget exhausted factoring " + to_decimal(n));
}

std::map<Natural, Natural> factor_map(const Natural& x) {
  if (sgn(x) <= 0) throw Error(Errc::invalid_input, "can only factor positive integers");
  std::map<Natural, Natural> out;
  if (x == 1) return out;
  if (is_probable_prime(x)) {
    out[x] = 1;
    return out;
  }
  Natural rest = x;
  // Trial division by 2 and odd d up to min(10^6, sqrt(rest)).
  const auto bound = [&] {
    Natural root;
    mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
    return fits_u64(root) ? std::min(to_u64(root), kTrialDivisionLimit) : kTrialDivisionLimit;
  };
  std::uint64_t limit = bound();
  for (std::uint64_t d = 2; d <= limit; d += (d == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), d) == 0) continue;
    Natural e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), d) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
      ++e;
    }
    out[to_natural(d)] += e;
    limit = bound();
  }
  split_composite(rest, out);
  return out;
}

// Fits the prime power into a machine word for the reference oracles.
std::uint64_t small_prime_power(const Natural& p, const Natural& s) {
  const double bits = mpz_get_d(s.get_mpz_t()) * std::log2(mpz_get_d(p.get_mpz_t()));
  if (bits > 62) {
    throw Error(Errc::budget_exceeded, "reference engines only handle desk-scale moduli, not " +
                                           to_decimal(p) + "^" + to_decimal(s));
  }
  Natural q;
  mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), mpz_get_ui(s.get_mpz_t()));
  return to_u64(q);
}

unsigned small_k(const Natural& k) {
  if (!mpz_fits_uint_p(k.get_mpz_t())) {
    throw Error(Errc::budget_exceeded, "reference engines need a small k");
  }
  return static_cast<unsigned>(mpz_get_ui(k.get_mpz_t()));
}

Natural reference_count(const Natural& k, std::uint64_t lambda, std::uint64_t q, Engine engine,
                        const EvalContext& ctx) {
  switch (engine) {
    case Engine::bruteforce:
      return brute_histogram(small_k(k), q, kDefaultOracleBudget, ctx.ops).counts[lambda];
    case Engine::gauss:
      return gauss_formula_rho(small_k(k), lambda, q, ctx.ops);
    case Engine::toth:
      return toth_formula_rho(small_k(k), lambda, q, ctx.ops);
    case Engine::matrix:
      return matrix_power_rho(k, q, std::nullopt, ctx.ops).counts[lambda];
    default:
      throw std::logic_error("not a reference engine");
  }
}

}  // namespace

// ---- StructuredInt --------------------------------------------------------

StructuredInt StructuredInt::plain(Natural value) {
  if (sgn(value) < 0) throw Error(Errc::invalid_input, "structured integers are nonnegative");
  StructuredInt out;
  out.plain_ = std::move(value);
  return out;
}

StructuredInt StructuredInt::product(std::vector<PowerFactor> factors) {
  if (factors.empty()) throw Error(Errc::invalid_input, "empty product");
  for (const auto& f : factors) {
    if (sgn(f.base) < 0 || sgn(f.exp) < 0) {
      throw Error(Errc::invalid_input, "structured integers are nonnegative");
    }
  }
  StructuredInt out;
  out.factors_ = std::move(factors);
  return out;
}

bool StructuredInt::is_zero() const {
  if (is_plain()) return sgn(plain_) == 0;
  return std::any_of(factors_.begin(), factors_.end(),
                     [](const PowerFactor& f) { return sgn(f.base) == 0 && sgn(f.exp) > 0; });
}

Natural StructuredInt::mod(const Natural& m) const {
  if (sgn(m) <= 0) throw Error(Errc::invalid_modulus, "modulus must be >= 1");
  if (is_plain()) return plain_ % m;
  Natural acc = 1 % m;
  for (const auto& f : factors_) acc = acc * modpow(f.base, f.exp, m) % m;
  return acc;
}

double StructuredInt::log2_upper_bound() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  if (is_plain()) return static_cast<double>(mpz_sizeinbase(plain_.get_mpz_t(), 2));
  double bits = 0;
  for (const auto& f : factors_) {
    if (f.base <= 1) continue;
    bits += mpz_get_d(f.exp.get_mpz_t()) *
            static_cast<double>(mpz_sizeinbase(f.base.get_mpz_t(), 2));
  }
  return bits;
}

Natural StructuredInt::value(std::uint64_t limit_bits) const {
  if (is_plain()) return plain_;
  if (is_zero()) return 0;
  if (log2_upper_bound() > static_cast<double>(limit_bits)) {
    throw Error(Errc::too_large, "structured integer " + to_string() + " is too large to expand");
  }
  Natural acc = 1;
  for (const auto& f : factors_) {
    Natural term;
    mpz_pow_ui(term.get_mpz_t(), f.base.get_mpz_t(), mpz_get_ui(f.exp.get_mpz_t()));
    acc *= term;
  }
  return acc;
}

std::string StructuredInt::to_string() const {
  if (is_plain()) return to_decimal(plain_);
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += '*';
    out += to_decimal(f.base) + '^' + to_decimal(f.exp);
  }
  return out;
}

bool operator==(const StructuredInt& a, const StructuredInt& b) {
  if (a.is_plain() != b.is_plain()) return false;
  if (a.is_plain()) return a.plain_ == b.plain_;
  if (a.factors_.size() != b.factors_.size()) return false;
  for (std::size_t i = 0; i < a.factors_.size(); ++i) {
    if (a.factors_[i].base != b.factors_[i].base || a.factors_[i].exp != b.factors_[i].exp) {
      return false;
    }
  }
  return true;
}

StructuredInt parse_structured(std::string_view text, bool allow_zero) {
  std::size_t pos = 0;
  const auto fail = [&](const std::string& msg) -> Error {
    return Error(Errc::parse_error,
                 msg + " at position " + std::to_string(pos) + " in '" + std::string(text) + "'");
  };
  const auto skip_blanks = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])) != 0) ++pos;
  };
  const auto decimal = [&]() -> Natural {
    skip_blanks();
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])) != 0) ++pos;
    if (start == pos) throw fail("expected a decimal integer");
    return Natural(std::string(text.substr(start, pos - start)), 10);
  };

  std::vector<PowerFactor> factors;
  bool structured = false;
  while (true) {
    PowerFactor f{decimal(), 1};
    skip_blanks();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      f.exp = decimal();
      structured = true;
      skip_blanks();
    }
    factors.push_back(std::move(f));
    if (pos == text.size()) break;
    if (text[pos] != '*') throw fail(std::string("unexpected '") + text[pos] + "'");
    ++pos;
    structured = true;
  }

  StructuredInt out = structured ? StructuredInt::product(std::move(factors))
                                 : StructuredInt::plain(std::move(factors.front().base));
  if (!allow_zero && out.is_zero()) {
    pos = 0;
    throw fail("value must be nonzero");
  }
  return out;
}

// ---- factorization --------------------------------------------------------

Factorization factorize(const Natural& x) {
  Factorization out;
  for (auto& [p, s] : factor_map(x)) out.factors.push_back({p, s});
  return out;
}

Factorization factorize(const StructuredInt& x) {
  if (x.is_zero()) throw Error(Errc::invalid_input, "cannot factor zero");
  if (x.is_plain()) return factorize(x.plain_value());
  std::map<Natural, Natural> merged;
  for (const auto& f : x.factors()) {
    if (sgn(f.exp) == 0 || f.base == 1) continue;
    for (auto& [p, s] : factor_map(f.base)) merged[p] += s * f.exp;
  }
  Factorization out;
  for (auto& [p, s] : merged) out.factors.push_back({p, s});
  return out;
}

// ---- engines --------------------------------------------------------------

std::string_view to_string(Engine e) noexcept {
  switch (e) {
    case Engine::closed: return "closed";
    case Engine::recursive: return "recursive";
    case Engine::bruteforce: return "bruteforce";
    case Engine::gauss: return "gauss";
    case Engine::toth: return "toth";
    case Engine::matrix: return "matrix";
  }
  return "unknown";
}

std::optional<Engine> parse_engine(std::string_view name) noexcept {
  for (Engine e : {Engine::closed, Engine::recursive, Engine::bruteforce, Engine::gauss,
                   Engine::toth, Engine::matrix}) {
    if (to_string(e) == name) return e;
  }
  return std::nullopt;
}

std::optional<UnitPart> reduce_lambda(const StructuredInt& lambda, const Natural& p,
                                      const Natural& s) {
  if (lambda.is_zero()) return std::nullopt;
  const Natural m = unit_modulus(p);
  if (lambda.is_plain()) {
    Natural v = lambda.plain_value();
    // O(log lambda): only form p^s when lambda could reach it.
    const double p_bits = std::log2(mpz_get_d(p.get_mpz_t()));
    const double lambda_bits = static_cast<double>(mpz_sizeinbase(v.get_mpz_t(), 2));
    if (mpz_get_d(s.get_mpz_t()) * p_bits <= lambda_bits + 1) {
      Natural ps;
      mpz_pow_ui(ps.get_mpz_t(), p.get_mpz_t(), mpz_get_ui(s.get_mpz_t()));
      v %= ps;
    }
    if (sgn(v) == 0) return std::nullopt;
    PAdicSplit split = p_adic_split(v, p);
    return UnitPart{split.r, split.unit % m};
  }
  // Product form: valuation and unit residue read off factor by factor.
  Natural r = 0;
  Natural unit = 1 % m;
  for (const auto& f : lambda.factors()) {
    if (sgn(f.exp) == 0 || f.base == 1) continue;
    PAdicSplit split = p_adic_split(f.base, p);
    r += split.r * f.exp;
    unit = unit * modpow(split.unit, f.exp, m) % m;
  }
  if (r >= s) return std::nullopt;
  return UnitPart{r, unit};
}

Natural GeneralResult::eval_mod(const Natural& m, OpCounter* ops) const {
  if (sgn(m) <= 0) throw Error(Errc::invalid_modulus, "modulus must be >= 1");
  Natural acc = 1 % m;
  for (const auto& f : factors) {
    acc = acc * rho::eval_mod(f.value, m, ops) % m;
    tick(ops);
  }
  return acc;
}

double GeneralResult::log10_upper_bound() const {
  double total = 0;
  for (const auto& f : factors) total += rho::log10_upper_bound(f.value);
  return total;
}

Natural GeneralResult::digits_estimate() const { return digits_from_log10(log10_upper_bound()); }

Natural GeneralResult::eval_exact(std::uint64_t limit_bits) const {
  const double bound = log10_upper_bound();
  if (bound / std::log10(2.0) > static_cast<double>(limit_bits)) {
    throw Error(Errc::too_large, "exact value has about " + to_decimal(digits_from_log10(bound)) +
                                     " decimal digits, above the exact-render limit of " +
                                     std::to_string(limit_bits) + " bits");
  }
  Natural acc = 1;
  for (const auto& f : factors) acc *= rho::eval_exact(f.value, limit_bits);
  return acc;
}

GeneralResult rho_general(const Natural& k, const StructuredInt& lambda, const StructuredInt& n,
                          Engine engine, const EvalContext& ctx) {
  if (k < 1) throw Error(Errc::invalid_input, "k must be >= 1");
  if (n.is_zero()) throw Error(Errc::invalid_input, "n must be >= 1");
  GeneralResult out;
  for (const PrimeFactor& pf : factorize(n).factors) {
    PrimePowerQuery q{k, pf.p, pf.s, reduce_lambda(lambda, pf.p, pf.s)};
    switch (engine) {
      case Engine::closed:
        out.factors.push_back({q, rho_prime_power(q, ctx)});
        break;
      case Engine::recursive:
        out.factors.push_back({q, rho_rec(q, ctx)});
        break;
      default: {
        const std::uint64_t modulus = small_prime_power(pf.p, pf.s);
        const std::uint64_t lam = to_u64(lambda.mod(to_natural(modulus)));
        Natural count = reference_count(k, lam, modulus, engine, ctx);
        out.factors.push_back({q, RhoValue::constant(pf.p, count)});
        break;
      }
    }
  }
  return out;
}

}  // namespace rho
