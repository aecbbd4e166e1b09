#include <ostream>
#include <sstream>

#include "rho/reference.hpp"
#include "rho_cli/commands.hpp"

namespace rho::cli {
namespace {

constexpr unsigned kLebesgueMaxPrime = 50;
constexpr unsigned kLebesgueMaxK = 6;
constexpr unsigned kTwoAdicMaxK = 10;

std::string value_or_error(const auto& compute) {
  try {
    return to_decimal(compute());
  } catch (const std::exception& e) {
    return std::string("error: ") + e.what();
  }
}

void check_lebesgue(SelftestReport& rep, const EvalContext& ctx) {
  std::uint64_t checked = 0;
  for (unsigned p = 3; p <= kLebesgueMaxPrime; p += 2) {
    if (!is_probable_prime(p)) continue;
    for (unsigned k = 1; k <= kLebesgueMaxK; ++k) {
      const Histogram h = conv_histogram(k, p);
      for (unsigned lambda = 0; lambda < p; ++lambda, ++checked) {
        const std::string got = value_or_error(
            [&] { return eval_exact(rho_odd_prime(k, lambda, p, ctx)); });
        if (got == to_decimal(h.counts[lambda])) continue;
        std::ostringstream os;
        os << "odd prime (p, lambda, k) = (" << p << ", " << lambda << ", " << k
           << "): formula " << got << ", oracle " << h.counts[lambda];
        rep.first_failure = os.str();
        return;
      }
    }
  }
  rep.lines.push_back("odd prime base case: PASS (" + std::to_string(checked) + " identities)");
}

void check_two_adic(SelftestReport& rep, const EvalContext& ctx) {
  std::uint64_t checked = 0;
  for (unsigned t = 1; t <= 3; ++t) {
    const unsigned n = 1U << t;
    for (unsigned k = 1; k <= kTwoAdicMaxK; ++k) {
      const Histogram h = conv_histogram(k, n);
      for (unsigned lambda = 0; lambda < n; ++lambda, ++checked) {
        const std::string got = value_or_error(
            [&] { return eval_exact(rho_two_small(k, lambda, t, ctx)); });
        if (got == to_decimal(h.counts[lambda])) continue;
        std::ostringstream os;
        os << "2-adic table (t, lambda, k mod 8) = (" << t << ", " << lambda << ", " << k % 8
           << ") at k=" << k << ": formula " << got << ", oracle " << h.counts[lambda];
        rep.first_failure = os.str();
        return;
      }
    }
  }
  rep.lines.push_back("2-adic tables: PASS (" + std::to_string(checked) + " identities)");
}

void check_matrix(SelftestReport& rep, const EvalContext& ctx) {
  const Natural m = (Natural(1) << 61) - 1;
  std::uint64_t checked = 0;
  for (const Natural& k : {Natural(12345), Natural(1'000'000'007)}) {
    for (unsigned t = 1; t <= 3; ++t) {
      const Histogram h = matrix_power_rho(k, 1U << t, m);
      for (unsigned lambda = 0; lambda < (1U << t); ++lambda, ++checked) {
        const std::string got =
            value_or_error([&] { return eval_mod(rho_two_small(k, lambda, t, ctx), m); });
        if (got == to_decimal(h.counts[lambda])) continue;
        std::ostringstream os;
        os << "2-adic table (t, lambda, k mod 8) = (" << t << ", " << lambda << ", "
           << mod_small(k, 8) << ") at k=" << k << " mod 2^61-1: formula " << got
           << ", matrix " << h.counts[lambda];
        rep.first_failure = os.str();
        return;
      }
    }
    for (unsigned p : {3U, 5U, 7U, 11U}) {
      const Histogram h = matrix_power_rho(k, p, m);
      for (unsigned lambda = 0; lambda < p; ++lambda, ++checked) {
        const std::string got =
            value_or_error([&] { return eval_mod(rho_odd_prime(k, lambda, p, ctx), m); });
        if (got == to_decimal(h.counts[lambda])) continue;
        std::ostringstream os;
        os << "odd prime (p, lambda, k) = (" << p << ", " << lambda << ", " << k
           << ") mod 2^61-1: formula " << got << ", matrix " << h.counts[lambda];
        rep.first_failure = os.str();
        return;
      }
    }
  }
  rep.lines.push_back("large-k matrix check: PASS (" + std::to_string(checked) + " identities)");
}

}  // namespace

SelftestReport selftest(const EvalContext& ctx) {
  SelftestReport rep;
  for (auto* step : {&check_lebesgue, &check_two_adic, &check_matrix}) {
    step(rep, ctx);
    if (rep.first_failure) break;
  }
  return rep;
}

int cmd_selftest(Io io, const EvalContext& ctx) {
  const SelftestReport rep = selftest(ctx);
  for (const auto& line : rep.lines) io.out << line << '\n';
  if (rep.first_failure) {
    io.out << "FAIL: " << *rep.first_failure << '\n';
    return kExitMismatch;
  }
  io.out << "PASS\n";
  return kExitOk;
}

}  // namespace rho::cli
