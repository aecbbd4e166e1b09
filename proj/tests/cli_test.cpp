#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "rho/reference.hpp"
#include "rho_cli/commands.hpp"

namespace rho::cli {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args, const EvalContext& ctx = {}) {
  args.insert(args.begin(), "rho");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), {out, err}, ctx);
  return {code, out.str(), err.str()};
}

TEST(Compute, Examples) {
  EXPECT_EQ(run_cli({"compute", "--k", "2", "--lambda", "1", "--n", "20"}).out, "32\n");
  EXPECT_EQ(run_cli({"compute", "--k", "3", "--lambda", "0", "--n", "1"}).out, "1\n");
  const CliRun r = run_cli({"compute", "--k", "2", "--lambda", "1", "--n", "20", "--engine", "toth"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "32\n");
}

TEST(Compute, ShowcaseRecord) {
  ComputeOptions opt;
  opt.k = "10";
  opt.lambda = "5^100000";
  opt.n = "5^1000000";
  opt.mods = {"1000000007"};
  const OutputRecord rec = compute(opt);
  EXPECT_EQ(rec.engine, "closed");
  ASSERT_EQ(rec.factors.size(), 1U);
  EXPECT_EQ(rec.factors[0].p, "5");
  EXPECT_EQ(rec.factors[0].s, "1000000");
  EXPECT_FALSE(rec.exact.has_value());
  const long digits = std::stol(rec.digits10_estimate);
  EXPECT_NEAR(digits, 6'290'731, 10);
  ASSERT_EQ(rec.mod_evals.count("1000000007"), 1U);

  opt.engine = "recursive";
  EXPECT_EQ(compute(opt).mod_evals, rec.mod_evals);

  const CliRun r = run_cli({"compute", "--k", "10", "--lambda", "5^100000", "--n", "5^1000000",
                         "--mod", "1000000007", "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("mod_evals").at("1000000007").get<std::string>(),
            rec.mod_evals.at("1000000007"));
}

TEST(Compute, JsonRoundTrip) {
  for (const char* n : {"20", "2^10*3^5*7", "5^1000000"}) {
    ComputeOptions opt;
    opt.k = "5";
    opt.lambda = "12";
    opt.n = n;
    opt.mods = {"97", "1000000007"};
    opt.exact = std::string(n) != "5^1000000";
    const OutputRecord rec = compute(opt);
    EXPECT_EQ(record_from_json(nlohmann::json::parse(to_json(rec).dump())), rec) << n;
  }
  EXPECT_THROW(record_from_json(nlohmann::json::parse(R"({"engine": 3})")), Error);
}

TEST(Compute, ModAndExactAgree) {
  ComputeOptions opt;
  opt.k = "7";
  opt.lambda = "3^4*2";
  opt.n = "2^9*3^6*11^2";
  opt.mods = {"2", "1000", "2305843009213693951"};
  opt.exact = true;
  const OutputRecord rec = compute(opt);
  ASSERT_TRUE(rec.exact.has_value());
  const Natural exact(*rec.exact);
  for (const auto& [m, v] : rec.mod_evals) {
    EXPECT_EQ(Natural(exact % Natural(m)), Natural(v)) << m;
  }
  EXPECT_LE(rec.exact->size(), std::stoul(rec.digits10_estimate));
}

TEST(Compute, ExactRefusalCarriesEstimate) {
  const CliRun r = run_cli({"compute", "--k", "10", "--lambda", "5^100000", "--n", "5^10000000",
                            "--exact"});
  EXPECT_EQ(r.code, kExitRefused);
  EXPECT_NE(r.err.find("629073"), std::string::npos) << r.err;

  ComputeOptions opt;
  opt.k = "50";
  opt.lambda = "0";
  opt.n = "3^40";
  opt.exact_limit_bits = 64;
  EXPECT_THROW(compute(opt), Error);
}

TEST(Compute, ErrorExitCodes) {
  EXPECT_EQ(run_cli({"compute", "--k", "2", "--lambda", "1", "--n", "2^^3"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"compute", "--k", "2", "--lambda", "1", "--n", "0"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"compute", "--k", "0", "--lambda", "1", "--n", "5"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"compute", "--k", "2", "--lambda", "1"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"compute", "--k", "2", "--lambda", "1", "--n", "7", "--engine", "fast"}).code,
            kExitUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitUsage);
  const CliRun budget = run_cli({"compute", "--k", "2", "--lambda", "1", "--n", "5^1000000",
                              "--engine", "bruteforce", "--mod", "7"});
  EXPECT_EQ(budget.code, kExitRefused);
  EXPECT_FALSE(budget.err.empty());
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
}

TEST(Verify, SmallSuitePasses) {
  const CliRun r = run_cli({"verify", "--max-n", "16", "--max-k", "3", "--random-large", "5"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS ("), std::string::npos);
}

TEST(Verify, DeterministicForSeed) {
  const CliRun a = run_cli({"verify", "--max-n", "4", "--max-k", "2", "--random-large", "30",
                         "--seed", "7"});
  const CliRun b = run_cli({"verify", "--max-n", "4", "--max-k", "2", "--random-large", "30",
                         "--seed", "7"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  const SuiteReport x = verify_random_large(30, 7);
  const SuiteReport y = verify_random_large(30, 7);
  EXPECT_EQ(x.cases, y.cases);
  EXPECT_TRUE(x.passed());
}

TwoAdicTable corrupted(bool mod8, unsigned lambda) {
  TwoAdicTable t = default_two_adic_table();
  auto& terms = mod8 ? t.mod8[lambda] : t.mod4[lambda];
  terms.back().sign = -terms.back().sign;
  return t;
}

TEST(Verify, FlippedSignIsCaughtAtSmallestModulus) {
  for (const auto& [mod8, lambda, want_n] :
       {std::tuple{true, 1U, 8U}, std::tuple{true, 6U, 8U}, std::tuple{false, 3U, 4U},
        std::tuple{false, 0U, 4U}}) {
    const TwoAdicTable table = corrupted(mod8, lambda);
    EvalContext ctx;
    ctx.two_adic = &table;
    const SuiteReport rep = verify_exhaustive(24, 4, ctx);
    ASSERT_FALSE(rep.passed());
    const Mismatch& first = rep.failures.front();
    EXPECT_EQ(first.n, want_n) << failing_tuple(first);
    EXPECT_EQ(first.p, 2);

    const CliRun r = run_cli({"verify", "--max-n", "24", "--max-k", "4", "--random-large", "0"}, ctx);
    EXPECT_EQ(r.code, kExitMismatch);
    EXPECT_NE(r.out.find("(k, p, s, lambda) = ("), std::string::npos) << r.out;
  }
}

TEST(Selftest, PassesAndIsRepeatable) {
  const CliRun a = run_cli({"selftest"});
  const CliRun b = run_cli({"selftest"});
  EXPECT_EQ(a.code, kExitOk) << a.out << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Selftest, NamesCorruptedEntry) {
  const TwoAdicTable table = corrupted(true, 5);
  EvalContext ctx;
  ctx.two_adic = &table;
  const SelftestReport rep = selftest(ctx);
  ASSERT_FALSE(rep.passed());
  EXPECT_NE(rep.first_failure->find("(t, lambda, k mod 8) = (3, 5, "), std::string::npos)
      << *rep.first_failure;
  const CliRun r = run_cli({"selftest"}, ctx);
  EXPECT_EQ(r.code, kExitMismatch);
  EXPECT_NE((r.out + r.err).find("(3, 5, "), std::string::npos);

  const TwoAdicTable t4 = corrupted(false, 2);
  ctx.two_adic = &t4;
  EXPECT_NE(selftest(ctx).first_failure->find("= (2, 2, "), std::string::npos);
}

std::map<std::string, std::vector<BenchRow>> by_engine(const std::vector<BenchRow>& rows) {
  std::map<std::string, std::vector<BenchRow>> out;
  for (const auto& r : rows) out[r.engine].push_back(r);
  return out;
}

TEST(Bench, ScalingSeparatesEngines) {
  const auto rows = by_engine(bench_scaling());
  const auto& closed = rows.at("closed");
  const auto& rec = rows.at("recursive");
  ASSERT_EQ(closed.size(), 4U);
  ASSERT_EQ(rec.size(), 4U);
  for (const auto& r : closed) EXPECT_EQ(r.ops, closed.front().ops);
  EXPECT_GE(rec.back().ops, 100 * rec.front().ops);
  EXPECT_LT(closed.back().ns, rec.back().ns);
}

TEST(Bench, EnginesOrderingAt256) {
  const auto rows = bench_engines();
  for (unsigned k : {2U, 3U}) {
    std::map<std::string, std::uint64_t> ns;
    for (const auto& r : rows) {
      if (r.p == 2 && r.s == 8 && r.k == k) ns[r.engine] = r.ns;
    }
    ASSERT_TRUE(ns.count("bruteforce") && ns.count("closed") && ns.count("toth")) << k;
    for (const auto& [engine, t] : ns) {
      if (engine != "bruteforce") {
        EXPECT_GT(ns.at("bruteforce"), t) << engine << " k=" << k;
      }
      if (engine != "closed" && engine != "recursive") {
        EXPECT_LT(ns.at("closed"), t) << engine << " k=" << k;
      }
    }
  }
}

TEST(Bench, CsvToFileKeepsStdoutQuiet) {
  const auto path = std::filesystem::temp_directory_path() / "rho_bench_scaling_test.csv";
  const CliRun r = run_cli({"bench", "--suite", "scaling", "--out", path.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "engine,p,s,k,ops,ns");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 8);
  std::filesystem::remove(path);
  EXPECT_EQ(run_cli({"bench", "--suite", "nope"}).code, kExitUsage);
}

}  // namespace
}  // namespace rho::cli
