#include <algorithm>
#include <ostream>
#include <random>
#include <sstream>

#include "rho/reference.hpp"
#include "rho_cli/commands.hpp"

namespace rho::cli {
namespace {

constexpr std::uint64_t kLargeMaxPrime = 10'000;
constexpr std::uint64_t kLargeMaxExponent = 5'000;
constexpr std::uint64_t kLargeMaxK = 1'000;
constexpr std::uint64_t kLargeMaxUnit = 1'000'000;
constexpr int kLargeModuli = 5;

bool fits_brute(unsigned k, std::uint64_t n) {
  double tuples = 1;
  for (unsigned i = 0; i < k; ++i) tuples *= static_cast<double>(n);
  return tuples <= static_cast<double>(kDefaultOracleBudget);
}

class ExhaustiveRunner {
 public:
  ExhaustiveRunner(std::uint64_t n, unsigned k, const EvalContext& ctx, SuiteReport& report)
      : n_(n), k_(k), ctx_(ctx), report_(report) {
    const Factorization f = factorize(to_natural(n));
    if (f.factors.size() == 1) {
      p_ = f.factors[0].p;
      s_ = f.factors[0].s;
    }
  }

  void run() {
    const Histogram conv = conv_histogram(k_, n_);
    std::optional<Histogram> brute;
    if (fits_brute(k_, n_)) brute = brute_histogram(k_, n_);
    const Histogram& want = brute ? *brute : conv;
    std::optional<Histogram> matrix;
    if (n_ <= kMatrixMaxModulus) matrix = matrix_power_rho(k_, n_);

    for (std::uint64_t lambda = 0; lambda < n_; ++lambda) {
      ++report_.cases;
      const Natural& w = want.counts[lambda];
      if (brute) check("conv", lambda, [&] { return conv.counts[lambda]; }, w);
      if (matrix) check("matrix", lambda, [&] { return matrix->counts[lambda]; }, w);
      for (Engine e : {Engine::closed, Engine::recursive}) {
        check(std::string(to_string(e)), lambda, [&] { return general(e, lambda); }, w);
      }
      if (n_ <= kGaussMaxModulus && k_ <= kGaussMaxK) {
        check("gauss", lambda, [&] { return general(Engine::gauss, lambda); }, w);
      }
      if (n_ <= kTothMaxModulus) {
        check("toth", lambda, [&] { return general(Engine::toth, lambda); }, w);
      }
    }
  }

 private:
  Natural general(Engine e, std::uint64_t lambda) const {
    return rho_general(k_, StructuredInt::plain(to_natural(lambda)),
                       StructuredInt::plain(to_natural(n_)), e, ctx_)
        .eval_exact();
  }

  template <class F>
  void check(const std::string& engine, std::uint64_t lambda, F&& compute, const Natural& want) {
    std::string got;
    try {
      const Natural v = compute();
      if (v == want) return;
      got = to_decimal(v);
    } catch (const std::exception& e) {
      got = std::string("error: ") + e.what();
    }
    report_.failures.push_back(
        {k_, n_, p_, s_, std::to_string(lambda), engine, std::move(got), to_decimal(want)});
  }

  std::uint64_t n_;
  unsigned k_;
  const EvalContext& ctx_;
  SuiteReport& report_;
  Natural p_ = 0;
  Natural s_ = 0;
};

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q <= limit; ++q) {
    if (is_probable_prime(to_natural(q))) out.push_back(q);
  }
  return out;
}

void print_suite(const SuiteReport& r, std::ostream& os) {
  if (r.passed()) {
    os << r.name << ": PASS (" << r.cases << " cases)\n";
    return;
  }
  const Mismatch& m = r.failures.front();
  os << r.name << ": FAIL (" << r.failures.size() << " mismatches in " << r.cases << " cases)\n"
     << "  minimal failing tuple " << failing_tuple(m) << ": " << m.engine << " gave " << m.got
     << ", expected " << m.want << '\n';
}

}  // namespace

std::string failing_tuple(const Mismatch& m) {
  std::ostringstream os;
  if (m.s > 0) {
    os << "(k, p, s, lambda) = (" << m.k << ", " << m.p << ", " << m.s << ", " << m.lambda << ")";
  } else {
    os << "(k, n, lambda) = (" << m.k << ", " << m.n << ", " << m.lambda << ")";
  }
  return os.str();
}

SuiteReport verify_exhaustive(unsigned max_n, unsigned max_k, const EvalContext& ctx) {
  SuiteReport report;
  report.name = "exhaustive n<=" + std::to_string(max_n) + " k<=" + std::to_string(max_k);
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    for (unsigned k = 1; k <= max_k; ++k) ExhaustiveRunner(n, k, ctx, report).run();
  }
  return report;
}

SuiteReport verify_random_large(std::uint64_t count, std::uint64_t seed, const EvalContext& ctx) {
  SuiteReport report;
  report.name = "random-large count=" + std::to_string(count) + " seed=" + std::to_string(seed);
  static const std::vector<std::uint64_t> primes = primes_up_to(kLargeMaxPrime);
  std::mt19937_64 rng(seed);
  const auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };

  std::vector<Natural> moduli;
  for (int i = 0; i < kLargeModuli; ++i) {
    moduli.push_back(next_prime(to_natural(uniform(std::uint64_t{1} << 61, (std::uint64_t{1} << 62) - 1))));
  }

  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t p = primes[uniform(0, primes.size() - 1)];
    const std::uint64_t s = uniform(1, kLargeMaxExponent);
    const auto k = static_cast<unsigned>(uniform(1, kLargeMaxK));
    const std::uint64_t r = uniform(0, s - 1);
    std::uint64_t unit = 0;
    do unit = uniform(1, kLargeMaxUnit);
    while (unit % p == 0);

    const StructuredInt lambda =
        StructuredInt::product({{to_natural(p), to_natural(r)}, {to_natural(unit), 1}});
    const StructuredInt n = StructuredInt::product({{to_natural(p), to_natural(s)}});
    ++report.cases;
    Mismatch m{k, 0, to_natural(p), to_natural(s), lambda.to_string(), "closed", "", ""};
    try {
      const GeneralResult closed = rho_general(k, lambda, n, Engine::closed, ctx);
      const GeneralResult rec = rho_general(k, lambda, n, Engine::recursive, ctx);
      for (const Natural& q : moduli) {
        const Natural a = closed.eval_mod(q);
        const Natural b = rec.eval_mod(q);
        if (a != b) {
          m.got = to_decimal(a) + " (mod " + to_decimal(q) + ")";
          m.want = to_decimal(b) + " (recursive)";
          report.failures.push_back(m);
          break;
        }
      }
    } catch (const std::exception& e) {
      m.got = std::string("error: ") + e.what();
      m.want = "a value";
      report.failures.push_back(m);
    }
  }
  std::stable_sort(report.failures.begin(), report.failures.end(),
                   [](const Mismatch& a, const Mismatch& b) {
                     if (a.s != b.s) return a.s < b.s;
                     if (a.p != b.p) return a.p < b.p;
                     return a.k < b.k;
                   });
  return report;
}

int cmd_verify(const VerifyOptions& opt, Io io, const EvalContext& ctx) {
  const SuiteReport small = verify_exhaustive(opt.max_n, opt.max_k, ctx);
  print_suite(small, io.out);
  SuiteReport large;
  if (opt.random_large > 0) {
    large = verify_random_large(opt.random_large, opt.seed, ctx);
    print_suite(large, io.out);
  }
  const std::uint64_t total = small.cases + large.cases;
  if (small.passed() && large.passed()) {
    io.out << "PASS (" << total << " cases)\n";
    return kExitOk;
  }
  io.out << "FAIL\n";
  return kExitMismatch;
}

}  // namespace rho::cli
