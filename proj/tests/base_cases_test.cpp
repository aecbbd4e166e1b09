#include <gtest/gtest.h>

#include "rho/base_cases.hpp"
#include "rho/error.hpp"
#include "rho/reference.hpp"
#include "support/oracles.hpp"

namespace rho {
namespace {

using testing::naive_histogram;

Natural exact(const RhoValue& v) { return eval_exact(v); }

TEST(RhoOddPrime, Examples) {
  EXPECT_EQ(exact(rho_odd_prime(2, 1, 5)), 4);
  EXPECT_EQ(exact(rho_odd_prime(2, 0, 5)), 9);
  EXPECT_EQ(exact(rho_odd_prime(3, 3, 7)), 56);
  EXPECT_EQ(exact(rho_odd_prime(1, 1, 3)), 2);
}

TEST(RhoOddPrime, RejectsEvenModulus) {
  EXPECT_THROW(rho_odd_prime(2, 1, 2), Error);
  EXPECT_THROW(rho_odd_prime(2, 5, 5), Error);
}

TEST(RhoOddPrime, MatchesEnumerationForSmallPrimes) {
  for (std::uint64_t p = 3; p <= 50; p += 2) {
    if (!testing::naive_is_prime(p)) continue;
    for (unsigned k = 1; k <= 6; ++k) {
      const auto hist = naive_histogram(k, p);
      Natural total = 0;
      for (std::uint64_t lambda = 0; lambda < p; ++lambda) {
        const Natural v = exact(rho_odd_prime(k, to_natural(lambda), to_natural(p)));
        EXPECT_EQ(v, to_natural(hist[lambda])) << "p=" << p << " k=" << k << " lambda=" << lambda;
        total += v;
      }
      Natural pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
      EXPECT_EQ(total, pk);
    }
  }
}

TEST(RhoOddPrime, OddKDependsOnlyOnTheLegendreClass) {
  for (unsigned p : {11U, 23U, 43U}) {
    for (unsigned k : {1U, 3U, 5U, 7U, 9U}) {
      std::map<int, Natural> by_class;
      for (unsigned lambda = 0; lambda < p; ++lambda) {
        const Natural v = exact(rho_odd_prime(k, lambda, p));
        auto [it, fresh] = by_class.emplace(testing::naive_legendre(lambda, p), v);
        if (!fresh) {
          EXPECT_EQ(it->second, v) << "p=" << p << " k=" << k;
        }
      }
    }
  }
}

TEST(LebesgueAux, SignsFollowResiduesModFour) {
  // t sign (odd k) is -1 iff p = 3 mod 4 and k = 3 mod 4; l sign (even k) is
  // -1 iff p = 3 mod 4 and k = 2 mod 4.
  for (unsigned p : {3U, 5U, 7U, 13U}) {
    for (unsigned k = 1; k <= 12; ++k) {
      const LebesgueAux aux = lebesgue_aux(k, p);
      const bool neg = p % 4 == 3 && k % 4 == (k % 2 == 1 ? 3U : 2U);
      if (k % 2 == 1) {
        EXPECT_EQ(aux.t_sign, neg ? -1 : 1) << p << " " << k;
        EXPECT_EQ(aux.t_exp, (k - 1) / 2);
      } else {
        EXPECT_EQ(aux.l_sign, neg ? -1 : 1) << p << " " << k;
        EXPECT_EQ(aux.l_exp, (k - 2) / 2);
      }
    }
  }
}

TEST(RhoTwoSmall, Examples) {
  for (unsigned k = 1; k <= 20; ++k) {
    EXPECT_EQ(exact(rho_two_small(k, 1, 1)), Natural(1) << (k - 1));
    EXPECT_EQ(exact(rho_two_small(k, 0, 1)), Natural(1) << (k - 1));
  }
  EXPECT_EQ(exact(rho_two_small(1, 1, 3)), 4);
  EXPECT_EQ(exact(rho_two_small(2, 0, 3)), 8);
  EXPECT_EQ(exact(rho_two_small(2, 1, 2)), 8);
}

TEST(RhoTwoSmall, RangeErrors) {
  EXPECT_THROW(rho_two_small(2, 4, 2), Error);
  EXPECT_THROW(rho_two_small(2, 0, 4), Error);
  EXPECT_THROW(rho_two_small(2, 0, 0), Error);
}

TEST(RhoTwoSmall, MatchesEnumerationUpToKTen) {
  for (unsigned t = 1; t <= 3; ++t) {
    const std::uint64_t n = 1ULL << t;
    for (unsigned k = 1; k <= 10; ++k) {
      const auto hist = naive_histogram(k, n);
      for (unsigned lambda = 0; lambda < n; ++lambda) {
        EXPECT_EQ(exact(rho_two_small(k, lambda, t)), to_natural(hist[lambda]))
            << "(t, lambda, k mod 8) = (" << t << ", " << lambda << ", " << k % 8 << ")";
      }
    }
  }
}

TEST(RhoTwoSmall, MatchesMatrixPowerForHugeK) {
  const Natural m = (Natural(1) << 61) - 1;
  for (const Natural& k : {Natural(12345), Natural(1'000'000'007), Natural("98765432109876543")}) {
    for (unsigned t = 2; t <= 3; ++t) {
      const Histogram h = matrix_power_rho(k, 1U << t, m);
      for (unsigned lambda = 0; lambda < (1U << t); ++lambda) {
        EXPECT_EQ(eval_mod(rho_two_small(k, lambda, t), m), h.counts[lambda])
            << "k=" << k << " t=" << t << " lambda=" << lambda;
      }
    }
  }
}

TEST(RhoTwoSmall, SumsToPowerOfTwo) {
  for (unsigned t = 1; t <= 3; ++t) {
    for (unsigned k = 1; k <= 40; ++k) {
      Natural total = 0;
      for (unsigned lambda = 0; lambda < (1U << t); ++lambda) total += exact(rho_two_small(k, lambda, t));
      EXPECT_EQ(total, Natural(1) << (t * k));
    }
  }
}

TEST(TwoAdicTable, OddSqrtTwoPowersAreRejected) {
  // Drop one term of a row so the sqrt(2) parts no longer cancel.
  TwoAdicTable broken = default_two_adic_table();
  broken.mod8[1].pop_back();
  EvalContext ctx;
  ctx.two_adic = &broken;
  bool rejected = false;
  for (unsigned k = 1; k <= 8; ++k) {
    try {
      (void)rho_two_small(k, 1, 3, ctx);
    } catch (const std::logic_error&) {
      rejected = true;
    }
  }
  EXPECT_TRUE(rejected);
}

TEST(TrigValue, ExactSqrtTwoPowers) {
  // cos(j pi/4) for j = 0..7: 1, r, 0, -r, -1, -r, 0, r with r = 2^{-1/2}.
  const int signs[8] = {1, 1, 0, -1, -1, -1, 0, 1};
  for (unsigned j = 0; j < 8; ++j) {
    const TwoAdicCoeff c = trig_value(Trig::cos, j);
    EXPECT_EQ(c.sign, signs[j]) << j;
    if (c.sign != 0) {
      EXPECT_EQ(c.half_exp, j % 2 == 1 ? -1 : 0) << j;
    }
    const TwoAdicCoeff s = trig_value(Trig::sin, j);
    EXPECT_EQ(s.sign, signs[(j + 6) % 8]) << j;
  }
}

TEST(Rho1Base, Examples) {
  EXPECT_EQ(exact(rho1_base(1, 0, 2, 1)), 0);
  EXPECT_EQ(exact(rho1_base(1, 0, 2, 3)), 0);
  EXPECT_EQ(exact(rho1_base(3, 5, 2, 3)), exact(rho_two_small(3, 5, 3)));
}

TEST(Rho1Base, CountsTuplesWithAUnitCoordinate) {
  for (unsigned k = 1; k <= 6; ++k) {
    for (std::uint64_t n : {2ULL, 4ULL, 8ULL, 3ULL, 5ULL, 7ULL, 11ULL}) {
      const std::uint64_t p = n % 2 == 0 ? 2 : n;
      const unsigned t = n == 8 ? 3 : n == 4 ? 2 : 1;
      const auto all = naive_histogram(k, n);
      const auto divisible = testing::naive_all_divisible(k, n, p);
      for (std::uint64_t lambda = 0; lambda < n; ++lambda) {
        EXPECT_EQ(exact(rho1_base(k, to_natural(lambda), to_natural(p), t)),
                  to_natural(all[lambda] - divisible[lambda]))
            << "n=" << n << " k=" << k << " lambda=" << lambda;
      }
    }
  }
}

}  // namespace
}  // namespace rho
