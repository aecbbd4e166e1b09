#include "rho/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <string>

#include "rho/error.hpp"

namespace rho {
namespace {

// a * b, or nullopt on overflow past the budget.
std::optional<std::uint64_t> budget_mul(std::uint64_t a, std::uint64_t b, std::uint64_t budget) {
  if (a != 0 && b > budget / a) return std::nullopt;
  const std::uint64_t out = a * b;
  if (out > budget) return std::nullopt;
  return out;
}

void require_modulus(std::uint64_t n) {
  if (n == 0) throw Error(Errc::invalid_modulus, "modulus must be >= 1");
}

std::vector<std::uint64_t> square_residues(std::uint64_t n) {
  std::vector<std::uint64_t> sq(n);
  for (std::uint64_t x = 0; x < n; ++x) sq[x] = x * x % n;
  return sq;
}

std::vector<Natural> cyclic_convolve(const std::vector<Natural>& a, const std::vector<Natural>& b,
                                     const std::optional<Natural>& m) {
  const std::size_t n = a.size();
  std::vector<Natural> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(b[j]) == 0) continue;
      Natural& slot = out[(i + j) % n];
      mpz_addmul(slot.get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  if (m) {
    for (auto& v : out) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m->get_mpz_t());
  }
  return out;
}

// e(x) = exp(2 pi i num/den) with the numerator already reduced.
std::complex<double> unit_root(std::uint64_t num, std::uint64_t den) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

std::complex<double> ipow(std::complex<double> z, unsigned k) {
  std::complex<double> out{1.0, 0.0};
  for (unsigned i = 0; i < k; ++i) out *= z;
  return out;
}

Natural round_checked(std::complex<double> raw, const char* formula) {
  const double rounded = std::round(raw.real());
  const double err = std::abs(raw - std::complex<double>{rounded, 0.0});
  if (rounded < 0 || err >= kRoundingTolerance * std::max(1.0, rounded)) {
    throw Error(Errc::numerical_instability,
                std::string(formula) + " rounding margin violated: raw = " +
                    std::to_string(raw.real()) + (raw.imag() < 0 ? "" : "+") +
                    std::to_string(raw.imag()) + "i");
  }
  Natural out;
  mpz_set_d(out.get_mpz_t(), rounded);
  return out;
}

}  // namespace

Natural Histogram::total() const {
  Natural sum = 0;
  for (const auto& c : counts) sum += c;
  return sum;
}

CirculantM CirculantM::squares(std::uint64_t n) {
  require_modulus(n);
  CirculantM m{n, std::vector<Natural>(n, 0)};
  for (std::uint64_t x = 0; x < n; ++x) ++m.row[x * x % n];
  return m;
}

Histogram brute_histogram(unsigned k, std::uint64_t n, std::uint64_t budget, OpCounter* ops) {
  require_modulus(n);
  if (k < 1) throw Error(Errc::invalid_input, "k must be >= 1");
  std::uint64_t work = 1;
  for (unsigned i = 0; i < k; ++i) {
    auto next = budget_mul(work, n, budget);
    if (!next) {
      throw Error(Errc::budget_exceeded, "brute force needs n^k = " + std::to_string(n) + "^" +
                                             std::to_string(k) +
                                             " tuples; use conv_histogram instead");
    }
    work = *next;
  }
  tick(ops, work);

  const std::vector<std::uint64_t> sq = square_residues(n);
  std::vector<std::uint64_t> counts(n, 0);
  // Odometer over the first k-1 coordinates; the last one is a tight loop.
  std::vector<std::uint64_t> digits(k - 1, 0);
  std::vector<std::uint64_t> prefix(k, 0);  // prefix[i] = sum of squares of digits[0..i)
  while (true) {
    const std::uint64_t base = prefix[k - 1];
    for (std::uint64_t x = 0; x < n; ++x) {
      std::uint64_t v = base + sq[x];
      if (v >= n) v -= n;
      ++counts[v];
    }
    std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(k) - 2;
    while (pos >= 0 && ++digits[pos] == n) digits[pos--] = 0;
    if (pos < 0) break;
    for (std::size_t i = pos; i + 1 < k; ++i) prefix[i + 1] = (prefix[i] + sq[digits[i]]) % n;
  }

  Histogram h{n, std::vector<Natural>(n)};
  for (std::uint64_t i = 0; i < n; ++i) h.counts[i] = to_natural(counts[i]);
  return h;
}

Histogram conv_histogram(unsigned k, std::uint64_t n, std::uint64_t budget, OpCounter* ops) {
  require_modulus(n);
  if (k < 1) throw Error(Errc::invalid_input, "k must be >= 1");
  auto nn = budget_mul(n, n, budget);
  if (!nn || !budget_mul(*nn, k, budget)) {
    throw Error(Errc::budget_exceeded, "convolution needs k n^2 operations beyond the budget");
  }
  const CirculantM m = CirculantM::squares(n);
  std::vector<Natural> r = m.row;
  for (unsigned i = 1; i < k; ++i) {
    r = cyclic_convolve(m.row, r, std::nullopt);
    tick(ops, *nn);
  }
  return {n, std::move(r)};
}

Histogram matrix_power_rho(const Natural& k, std::uint64_t n, const std::optional<Natural>& m,
                           OpCounter* ops, std::uint64_t limit_bits) {
  require_modulus(n);
  if (n > kMatrixMaxModulus) {
    throw Error(Errc::budget_exceeded, "matrix_power_rho needs n <= " + std::to_string(kMatrixMaxModulus));
  }
  if (k < 1) throw Error(Errc::invalid_input, "k must be >= 1");
  if (m && sgn(*m) <= 0) throw Error(Errc::invalid_modulus, "modulus must be >= 1");
  if (!m && n > 1) {
    // Entries are at most n^k.
    const double bits = mpz_get_d(k.get_mpz_t()) * std::log2(static_cast<double>(n));
    if (bits > static_cast<double>(limit_bits)) {
      throw Error(Errc::too_large, "exact circulant power would need about " +
                                       std::to_string(static_cast<std::uint64_t>(bits)) +
                                       " bits per entry; pass a modulus");
    }
  }
  const CirculantM circ = CirculantM::squares(n);
  std::vector<Natural> base = circ.row;
  std::vector<Natural> acc(n, 0);
  acc[0] = 1;
  if (m) {
    for (auto& v : base) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m->get_mpz_t());
    mpz_fdiv_r(acc[0].get_mpz_t(), acc[0].get_mpz_t(), m->get_mpz_t());
  }
  // acc = row^{*k}: R_1 = row, and each application of M convolves once more.
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(k.get_mpz_t(), i) != 0) {
      acc = cyclic_convolve(acc, base, m);
      tick(ops, n * n);
    }
    if (i + 1 < bits) {
      base = cyclic_convolve(base, base, m);
      tick(ops, n * n);
    }
  }
  return {n, std::move(acc)};
}

namespace {

// Roots of unity mod r and the multiset of squares mod r, so that
// S(l, r) = sum_j mult[j] * w[l j mod r] needs no trig calls.
class GaussSumTable {
 public:
  explicit GaussSumTable(std::uint64_t r) : r_(r), w_(r) {
    for (std::uint64_t j = 0; j < r; ++j) w_[j] = unit_root(j, r);
    std::vector<std::uint64_t> mult(r, 0);
    for (std::uint64_t x = 0; x < r; ++x) ++mult[x * x % r];
    for (std::uint64_t j = 0; j < r; ++j) {
      if (mult[j] != 0) squares_.push_back({j, static_cast<double>(mult[j])});
    }
  }

  std::complex<double> root(std::uint64_t j) const { return w_[j % r_]; }

  std::complex<double> sum(std::uint64_t l, OpCounter* ops = nullptr) const {
    const std::uint64_t lr = l % r_;
    std::complex<double> out{0.0, 0.0};
    for (const auto& [j, m] : squares_) out += m * w_[lr * j % r_];
    tick(ops, squares_.size());
    return out;
  }

 private:
  struct Square {
    std::uint64_t residue;
    double multiplicity;
  };
  std::uint64_t r_;
  std::vector<std::complex<double>> w_;
  std::vector<Square> squares_;
};

}  // namespace

std::complex<double> quad_gauss_sum(std::uint64_t l, std::uint64_t r) {
  require_modulus(r);
  if (r > 1'000'000) throw Error(Errc::budget_exceeded, "quad_gauss_sum needs r <= 10^6");
  return GaussSumTable(r).sum(l);
}

Natural gauss_formula_rho(unsigned k, std::uint64_t lambda, std::uint64_t n, OpCounter* ops) {
  require_modulus(n);
  if (n > kGaussMaxModulus || k > kGaussMaxK || k < 1) {
    throw Error(Errc::budget_exceeded, "exponential-sum formula limited to n <= 200, 1 <= k <= 4");
  }
  const GaussSumTable table(n);
  const std::uint64_t lam = lambda % n;
  std::complex<double> sum{0.0, 0.0};
  for (std::uint64_t a = 1; a <= n; ++a) {
    sum += table.root(n - (a * lam) % n) * ipow(table.sum(a, ops), k);
  }
  tick(ops, n);
  return round_checked(sum / static_cast<double>(n), "Gauss-sum formula");
}

Natural toth_formula_rho(unsigned k, std::uint64_t lambda, std::uint64_t n, OpCounter* ops) {
  require_modulus(n);
  if (n > kTothMaxModulus || k < 1 || k > 8) {
    throw Error(Errc::budget_exceeded, "divisor-sum formula limited to n <= 512, 1 <= k <= 8");
  }
  std::complex<double> total{0.0, 0.0};
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const GaussSumTable table(d);
    std::complex<double> inner{0.0, 0.0};
    const std::uint64_t lam = lambda % d;
    for (std::uint64_t l = 1; l <= d; ++l) {
      if (std::gcd(l, d) != 1) continue;
      inner += table.root(d - (l * lam) % d) * ipow(table.sum(l, ops), k);
      tick(ops);
    }
    total += inner / std::pow(static_cast<double>(d), static_cast<double>(k));
  }
  total *= std::pow(static_cast<double>(n), static_cast<double>(k - 1));
  return round_checked(total, "divisor-sum formula");
}

}  // namespace rho
