#include <CLI11.hpp>
#include <ostream>

#include "rho_cli/commands.hpp"

namespace rho::cli {

int run(int argc, const char* const* argv, Io io, const EvalContext& ctx) {
  CLI::App app{"Count solutions of x1^2 + ... + xk^2 = lambda (mod n)", "rho"};
  app.require_subcommand(1);

  ComputeOptions copt;
  auto* compute_cmd = app.add_subcommand("compute", "Evaluate rho_{k,lambda}(n)");
  compute_cmd->add_option("--k", copt.k, "Number of squares")->required();
  compute_cmd->add_option("--lambda", copt.lambda, "Target residue, e.g. 5^100000")->required();
  compute_cmd->add_option("--n", copt.n, "Modulus, e.g. 5^1000000 or 2^3*5^2")->required();
  compute_cmd->add_option("--engine", copt.engine, "closed|recursive|bruteforce|gauss|toth|matrix")
      ->capture_default_str();
  compute_cmd->add_option("--mod", copt.mods, "Report the value modulo M (repeatable)");
  compute_cmd->add_flag("--exact", copt.exact, "Print the exact integer");
  compute_cmd->add_flag("--json", copt.json, "Emit a JSON record");

  VerifyOptions vopt;
  auto* verify_cmd = app.add_subcommand("verify", "Differential checks across engines");
  verify_cmd->add_option("--max-n", vopt.max_n, "Largest modulus in the exhaustive sweep")
      ->capture_default_str();
  verify_cmd->add_option("--max-k", vopt.max_k, "Largest k in the exhaustive sweep")
      ->capture_default_str();
  verify_cmd->add_option("--random-large", vopt.random_large,
                         "Random large closed-vs-recursive instances")
      ->capture_default_str();
  verify_cmd->add_option("--seed", vopt.seed, "Seed for the random suite")->capture_default_str();

  std::string suite;
  std::string out_path;
  auto* bench_cmd = app.add_subcommand("bench", "Timing and op-count CSV");
  bench_cmd->add_option("--suite", suite, "scaling|engines")
      ->required()
      ->check(CLI::IsMember({"scaling", "engines"}));
  bench_cmd->add_option("--out", out_path, "Write CSV here instead of stdout");

  auto* selftest_cmd = app.add_subcommand("selftest", "Check base-case tables against oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compute_cmd) return cmd_compute(copt, io, ctx);
    if (*verify_cmd) return cmd_verify(vopt, io, ctx);
    if (*bench_cmd) return cmd_bench(suite, out_path, io);
    if (*selftest_cmd) return cmd_selftest(io, ctx);
  } catch (const Error& e) {
    io.err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    io.err << "internal error: " << e.what() << '\n';
    return kExitMismatch;
  }
  return kExitUsage;
}

}  // namespace rho::cli
