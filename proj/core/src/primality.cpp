#include <array>
#include <random>

#include "rho/numbers.hpp"

namespace rho {
namespace {

bool miller_rabin_round(const Natural& n, const Natural& d, unsigned long s, const Natural& a) {
  Natural x = modpow(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

bool is_probable_prime(const Natural& n) {
  static constexpr std::array<unsigned long, 13> kBases = {2, 3, 5, 7, 11, 13, 17,
                                                           19, 23, 29, 31, 37, 41};
  if (n < 2) return false;
  for (unsigned long b : kBases) {
    if (n == b) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), b) != 0) return false;
  }
  Natural d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  for (unsigned long b : kBases) {
    if (!miller_rabin_round(n, d, s, Natural(b))) return false;
  }
  // The first 13 prime bases are a proof below 3.317e24.
  static const Natural kDeterministicLimit("3317044064679887385961981", 10);
  if (n < kDeterministicLimit) return true;

  // 64 further rounds with bases drawn from a fixed-seed stream: error < 4^-64.
  std::mt19937_64 gen(0x9e3779b97f4a7c15ULL ^ mpz_get_ui(n.get_mpz_t()));
  const Natural span = n - 3;
  for (int round = 0; round < 64; ++round) {
    Natural a = to_natural(gen());
    a = a * to_natural(gen()) % span + 2;
    if (!miller_rabin_round(n, d, s, a)) return false;
  }
  return true;
}

Natural next_prime(const Natural& n) {
  Natural c = n + 1;
  if (c <= 2) return 2;
  if (is_even(c)) ++c;
  while (!is_probable_prime(c)) c += 2;
  return c;
}

}  // namespace rho
