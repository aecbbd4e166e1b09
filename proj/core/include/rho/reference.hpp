#pragma once

// Desk-scale oracles for rho_{k,lambda}(n). None of these share code with the
// prime-power engines; they only need n to be small.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "rho/numbers.hpp"

namespace rho {

inline constexpr std::uint64_t kDefaultOracleBudget = 1'000'000'000;

// counts[lambda] = rho_{k,lambda}(modulus); sums to modulus^k.
struct Histogram {
  std::uint64_t modulus = 0;
  std::vector<Natural> counts;

  Natural total() const;
  friend bool operator==(const Histogram&, const Histogram&) = default;
};

// row[j] = #{x : x^2 = j mod n}; multiplying by it is cyclic convolution.
struct CirculantM {
  std::uint64_t n = 0;
  std::vector<Natural> row;

  static CirculantM squares(std::uint64_t n);
};

// Exhaustive enumeration of (Z/nZ)^k; refuses when n^k exceeds the budget.
Histogram brute_histogram(unsigned k, std::uint64_t n,
                          std::uint64_t budget = kDefaultOracleBudget, OpCounter* ops = nullptr);

// R_k = M * R_{k-1}, applied k-1 times; refuses when k n^2 exceeds the budget.
Histogram conv_histogram(unsigned k, std::uint64_t n,
                         std::uint64_t budget = kDefaultOracleBudget, OpCounter* ops = nullptr);

// M^{k-1} R_1 by square-and-multiply on the circulant; exact or mod m.
// Exact mode refuses when the entries would exceed limit_bits.
inline constexpr std::uint64_t kMatrixMaxModulus = 64;
Histogram matrix_power_rho(const Natural& k, std::uint64_t n,
                           const std::optional<Natural>& m = std::nullopt,
                           OpCounter* ops = nullptr,
                           std::uint64_t limit_bits = std::uint64_t{1} << 26);

// sum_{j=1}^{r} exp(2 pi i l j^2 / r), in double precision.
std::complex<double> quad_gauss_sum(std::uint64_t l, std::uint64_t r);

// (1/n) sum_a e(-a lambda/n) S(a,n)^k, rounded; n <= 200, k <= 4.
Natural gauss_formula_rho(unsigned k, std::uint64_t lambda, std::uint64_t n,
                          OpCounter* ops = nullptr);

// n^{k-1} sum_{d|n} d^{-k} sum_{gcd(l,d)=1} e(-l lambda/d) S(l,d)^k, rounded; n <= 512.
Natural toth_formula_rho(unsigned k, std::uint64_t lambda, std::uint64_t n,
                         OpCounter* ops = nullptr);

inline constexpr std::uint64_t kGaussMaxModulus = 200;
inline constexpr unsigned kGaussMaxK = 4;
inline constexpr std::uint64_t kTothMaxModulus = 512;
inline constexpr double kRoundingTolerance = 1e-4;

}  // namespace rho
