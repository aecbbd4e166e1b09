#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>

#include "rho/reference.hpp"
#include "rho_cli/commands.hpp"

namespace rho::cli {
namespace {

constexpr unsigned kScalingK = 10;
constexpr unsigned kScalingP = 5;
constexpr std::uint64_t kMinSampleNs = 20'000'000;

const Natural& bench_modulus() {
  static const Natural m = 1'000'000'007;
  return m;
}

// Mean wall time over enough repetitions to fill kMinSampleNs; op counts come
// from the first repetition. Each repetition evaluates every lambda once.
BenchRow measure(Engine engine, unsigned k, const std::vector<StructuredInt>& lambdas,
                 const Natural& p, const Natural& s) {
  BenchRow row{std::string(to_string(engine)), p, s, k, 0, 0};
  const StructuredInt n = StructuredInt::product({{p, s}});
  std::uint64_t total_ns = 0;
  std::uint64_t reps = 0;
  while (total_ns < kMinSampleNs) {
    OpCounter ops;
    EvalContext ctx;
    ctx.ops = &ops;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& lambda : lambdas) {
      const GeneralResult r = rho_general(k, lambda, n, engine, ctx);
      (void)r.eval_mod(bench_modulus(), &ops);
    }
    const auto stop = std::chrono::steady_clock::now();
    total_ns += static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
    if (reps++ == 0) row.ops = ops.count();
  }
  row.ns = total_ns / reps;
  return row;
}

}  // namespace

std::vector<BenchRow> bench_scaling() {
  std::vector<BenchRow> rows;
  const std::vector<StructuredInt> zero{StructuredInt::plain(0)};
  for (std::uint64_t s : {1'000ULL, 10'000ULL, 100'000ULL, 1'000'000ULL}) {
    for (Engine e : {Engine::closed, Engine::recursive}) {
      rows.push_back(measure(e, kScalingK, zero, kScalingP, to_natural(s)));
    }
  }
  return rows;
}

std::vector<BenchRow> bench_engines() {
  struct Modulus {
    unsigned p;
    unsigned s;
  };
  std::vector<BenchRow> rows;
  for (const Modulus mod : {Modulus{2, 6}, Modulus{3, 5}, Modulus{2, 8}, Modulus{2, 9}}) {
    // One lambda per p-adic valuation, plus lambda = 0.
    std::vector<StructuredInt> lambdas{StructuredInt::plain(0)};
    std::uint64_t n = 1;
    for (unsigned r = 0; r < mod.s; ++r) {
      lambdas.push_back(StructuredInt::plain(to_natural(n)));
      n *= mod.p;
    }
    for (unsigned k : {2U, 3U}) {
      std::vector<Engine> engines{Engine::closed, Engine::recursive, Engine::bruteforce,
                                  Engine::toth};
      if (n <= kGaussMaxModulus) engines.push_back(Engine::gauss);
      if (n <= kMatrixMaxModulus) engines.push_back(Engine::matrix);
      for (Engine e : engines) rows.push_back(measure(e, k, lambdas, mod.p, mod.s));
    }
  }
  return rows;
}

void write_csv(const std::vector<BenchRow>& rows, std::ostream& os) {
  os << "engine,p,s,k,ops,ns\n";
  for (const auto& r : rows) {
    os << r.engine << ',' << r.p << ',' << r.s << ',' << r.k << ',' << r.ops << ',' << r.ns
       << '\n';
  }
}

int cmd_bench(const std::string& suite, const std::string& out_path, Io io) {
  std::vector<BenchRow> rows;
  if (suite == "scaling") {
    rows = bench_scaling();
  } else if (suite == "engines") {
    rows = bench_engines();
  } else {
    io.err << "unknown suite '" << suite << "' (expected scaling or engines)\n";
    return kExitUsage;
  }
  if (out_path.empty()) {
    write_csv(rows, io.out);
    return kExitOk;
  }
  std::ofstream file(out_path);
  if (!file) {
    io.err << "cannot open " << out_path << " for writing\n";
    return kExitUsage;
  }
  write_csv(rows, file);
  return kExitOk;
}

}  // namespace rho::cli
