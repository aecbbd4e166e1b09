#include <chrono>
#include <cstdlib>
#include <ostream>

#include "rho_cli/commands.hpp"

namespace rho::cli {

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::too_large:
    case Errc::budget_exceeded:
    case Errc::factorization_give_up:
      return kExitRefused;
    case Errc::numerical_instability:
      return kExitMismatch;
    default:
      return kExitUsage;
  }
}

std::uint64_t exact_limit_from_env() {
  const char* raw = std::getenv("RHO_EXACT_LIMIT_BITS");
  if (raw == nullptr || *raw == '\0') return kDefaultExactLimitBits;
  return to_u64(parse_natural(raw));
}

OutputRecord compute(const ComputeOptions& opt, const EvalContext& ctx) {
  const Natural k = parse_natural(opt.k);
  const StructuredInt lambda = parse_structured(opt.lambda, /*allow_zero=*/true);
  const StructuredInt n = parse_structured(opt.n);
  const auto engine = parse_engine(opt.engine);
  if (!engine) throw Error(Errc::invalid_input, "unknown engine '" + opt.engine + "'");
  std::vector<Natural> mods;
  for (const auto& text : opt.mods) {
    Natural m = parse_natural(text);
    if (m < 1) throw Error(Errc::invalid_modulus, "--mod must be >= 1");
    mods.push_back(std::move(m));
  }
  const std::uint64_t limit = opt.exact_limit_bits ? *opt.exact_limit_bits : exact_limit_from_env();

  OpCounter ops;
  EvalContext local = ctx;
  local.ops = &ops;

  const auto start = std::chrono::steady_clock::now();
  GeneralResult result = rho_general(k, lambda, n, *engine, local);
  OutputRecord rec;
  for (const auto& m : mods) rec.mod_evals[to_decimal(m)] = to_decimal(result.eval_mod(m, &ops));
  if (opt.exact || mods.empty()) rec.exact = to_decimal(result.eval_exact(limit));
  const auto stop = std::chrono::steady_clock::now();

  rec.engine = std::string(to_string(*engine));
  rec.k = to_decimal(k);
  rec.n = n.to_string();
  rec.lambda = lambda.to_string();
  for (const auto& f : result.factors) {
    rec.factors.push_back({to_decimal(f.query.p), to_decimal(f.query.s)});
    rec.terms.push_back(term_records(f.value));
  }
  rec.digits10_estimate = to_decimal(result.digits_estimate());
  rec.timings_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
  rec.op_count = ops.count();
  return rec;
}

int cmd_compute(const ComputeOptions& opt, Io io, const EvalContext& ctx) {
  const OutputRecord rec = compute(opt, ctx);
  if (opt.json) {
    io.out << to_json(rec).dump(2) << '\n';
    return kExitOk;
  }
  if (rec.mod_evals.empty() && rec.exact) {
    io.out << *rec.exact << '\n';
    return kExitOk;
  }
  // Preserve the order the moduli were given in.
  for (const auto& text : opt.mods) {
    const std::string key = to_decimal(parse_natural(text));
    io.out << "mod " << key << ": " << rec.mod_evals.at(key) << '\n';
  }
  io.out << "digits10_estimate: " << rec.digits10_estimate << '\n';
  if (rec.exact) io.out << "exact: " << *rec.exact << '\n';
  return kExitOk;
}

}  // namespace rho::cli
