#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "rho/base_cases.hpp"
#include "rho/error.hpp"
#include "rho/reference.hpp"
#include "support/oracles.hpp"

namespace rho {
namespace {

std::vector<Natural> naturals(std::initializer_list<unsigned> v) {
  return {v.begin(), v.end()};
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an exception";
  return Errc::invalid_input;
}

TEST(BruteHistogram, Examples) {
  EXPECT_EQ(brute_histogram(1, 4).counts, naturals({2, 2, 0, 0}));
  EXPECT_EQ(brute_histogram(2, 4).counts, naturals({4, 8, 4, 0}));
  EXPECT_EQ(brute_histogram(7, 1).counts, naturals({1}));
}

TEST(BruteHistogram, RefusesOverBudget) {
  EXPECT_EQ(code_of([] { brute_histogram(5, 100, 1'000'000); }), Errc::budget_exceeded);
  EXPECT_NO_THROW(brute_histogram(3, 100, 1'000'000));
  EXPECT_EQ(code_of([] { brute_histogram(2, 0); }), Errc::invalid_modulus);
}

TEST(BruteHistogram, CountsOperations) {
  OpCounter ops;
  brute_histogram(3, 10, kDefaultOracleBudget, &ops);
  EXPECT_GE(ops.count(), 1000U);
}

TEST(ConvHistogram, Examples) {
  EXPECT_EQ(conv_histogram(2, 4).counts, naturals({4, 8, 4, 0}));
  for (std::uint64_t n : {1U, 2U, 9U, 16U, 25U}) {
    EXPECT_EQ(conv_histogram(1, n).counts, CirculantM::squares(n).row);
  }
  EXPECT_EQ(conv_histogram(3, 5).counts[0], 25);
  EXPECT_EQ(code_of([] { conv_histogram(1000, 1000, 1'000'000); }), Errc::budget_exceeded);
}

TEST(CirculantM, RowCountsSquares) {
  for (std::uint64_t n = 1; n <= 64; ++n) {
    const CirculantM m = CirculantM::squares(n);
    ASSERT_EQ(m.row.size(), n);
    Natural total = 0;
    for (std::uint64_t j = 0; j < n; ++j) {
      total += m.row[j];
      EXPECT_EQ(m.row[j], testing::naive_count(1, j, n));
    }
    EXPECT_EQ(total, n);
  }
}

TEST(MatrixPower, Examples) {
  EXPECT_EQ(matrix_power_rho(2, 4).counts, naturals({4, 8, 4, 0}));
  EXPECT_EQ(matrix_power_rho(1, 12).counts, CirculantM::squares(12).row);
  const Natural m = (Natural(1) << 61) - 1;
  const Histogram h = matrix_power_rho(12345, 8, m);
  for (unsigned lambda = 0; lambda < 8; ++lambda) {
    EXPECT_EQ(h.counts[lambda], eval_mod(rho_two_small(12345, lambda, 3), m)) << lambda;
  }
  EXPECT_EQ(code_of([] { matrix_power_rho(2, 65); }), Errc::budget_exceeded);
  EXPECT_EQ(code_of([] { matrix_power_rho(100'000'000, 16); }), Errc::too_large);
}

TEST(MatrixPower, ReducedMatchesExactModM) {
  const Natural m = 1'000'003;
  for (std::uint64_t n : {5U, 12U, 27U}) {
    const Histogram exact = matrix_power_rho(40, n);
    const Histogram reduced = matrix_power_rho(40, n, m);
    for (std::uint64_t j = 0; j < n; ++j) {
      EXPECT_EQ(reduced.counts[j], Natural(exact.counts[j] % m));
    }
  }
}

TEST(ReferenceAgreement, IntegerOraclesCoincide) {
  for (std::uint64_t n = 1; n <= 32; ++n) {
    for (unsigned k = 1; k <= 5; ++k) {
      const Histogram conv = conv_histogram(k, n);
      Natural nk;
      mpz_ui_pow_ui(nk.get_mpz_t(), n, k);
      ASSERT_EQ(conv.total(), nk);
      ASSERT_EQ(matrix_power_rho(k, n), conv) << "n=" << n << " k=" << k;
      ASSERT_EQ(brute_histogram(k, n), conv) << "n=" << n << " k=" << k;
    }
  }
}

TEST(ReferenceAgreement, RecurrenceSpotCheck) {
  auto rng = testing::seeded_rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = 1 + rng() % 64;
    const unsigned k = 2 + rng() % 5;
    const std::uint64_t lambda = rng() % n;
    const Histogram prev = conv_histogram(k - 1, n);
    Natural want = 0;
    for (std::uint64_t x = 0; x < n; ++x) want += prev.counts[(lambda + n - x * x % n) % n];
    EXPECT_EQ(matrix_power_rho(k, n).counts[lambda], want) << n << " " << k << " " << lambda;
  }
}

TEST(QuadGaussSum, Examples) {
  const auto near = [](std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) < 1e-9;
  };
  EXPECT_TRUE(near(quad_gauss_sum(1, 1), {1, 0}));
  EXPECT_TRUE(near(quad_gauss_sum(1, 4), {2, 2}));
  EXPECT_TRUE(near(quad_gauss_sum(1, 3), {0, std::sqrt(3.0)}));
  // Classical evaluation for odd primes p = 1 mod 4.
  EXPECT_TRUE(near(quad_gauss_sum(1, 13), {std::sqrt(13.0), 0}));
}

TEST(ExponentialSums, Examples) {
  EXPECT_EQ(gauss_formula_rho(1, 1, 3), 2);
  EXPECT_EQ(gauss_formula_rho(2, 0, 4), 4);
  EXPECT_EQ(gauss_formula_rho(1, 0, 1), 1);
  EXPECT_EQ(toth_formula_rho(1, 1, 3), 2);
  EXPECT_EQ(toth_formula_rho(2, 1, 4), 8);
  EXPECT_EQ(toth_formula_rho(5, 0, 1), 1);
  EXPECT_EQ(code_of([] { gauss_formula_rho(5, 0, 10); }), Errc::budget_exceeded);
  EXPECT_EQ(code_of([] { gauss_formula_rho(2, 0, 201); }), Errc::budget_exceeded);
  EXPECT_EQ(code_of([] { toth_formula_rho(2, 0, 513); }), Errc::budget_exceeded);
}

TEST(ExponentialSums, MatchEnumeration) {
  for (std::uint64_t n = 1; n <= 100; ++n) {
    for (unsigned k = 1; k <= 3; ++k) {
      const auto want = testing::naive_histogram(k, n);
      for (std::uint64_t lambda = 0; lambda < n; ++lambda) {
        ASSERT_EQ(gauss_formula_rho(k, lambda, n), to_natural(want[lambda]))
            << "gauss n=" << n << " k=" << k << " lambda=" << lambda;
        ASSERT_EQ(toth_formula_rho(k, lambda, n), to_natural(want[lambda]))
            << "toth n=" << n << " k=" << k << " lambda=" << lambda;
      }
    }
  }
}

}  // namespace
}  // namespace rho
