#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rho/base_cases.hpp"
#include "rho/composer.hpp"
#include "rho/error.hpp"
#include "rho_cli/output_record.hpp"

namespace rho::cli {

enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitUsage = 2, kExitRefused = 3 };

int exit_code_for(Errc code) noexcept;

struct Io {
  std::ostream& out;
  std::ostream& err;
};

// ---- compute ---------------------------------------------------------------

struct ComputeOptions {
  std::string k;
  std::string lambda;
  std::string n;
  std::string engine = "closed";
  std::vector<std::string> mods;
  bool exact = false;
  bool json = false;
  std::optional<std::uint64_t> exact_limit_bits;  // default: env or built-in
};

// Exact limit from RHO_EXACT_LIMIT_BITS, falling back to the library default.
std::uint64_t exact_limit_from_env();

OutputRecord compute(const ComputeOptions& opt, const EvalContext& ctx = {});
int cmd_compute(const ComputeOptions& opt, Io io, const EvalContext& ctx = {});

// ---- verify ----------------------------------------------------------------

struct Mismatch {
  unsigned k = 0;
  std::uint64_t n = 0;  // 0 for structured large cases
  Natural p;
  Natural s;
  std::string lambda;
  std::string engine;
  std::string got;
  std::string want;
};

// "(k, p, s, lambda)" when the modulus is a prime power, else "(k, n, lambda)".
std::string failing_tuple(const Mismatch& m);

struct SuiteReport {
  std::string name;
  std::uint64_t cases = 0;
  std::vector<Mismatch> failures;  // canonical order; the first is minimal
  bool passed() const noexcept { return failures.empty(); }
};

SuiteReport verify_exhaustive(unsigned max_n, unsigned max_k, const EvalContext& ctx = {});
SuiteReport verify_random_large(std::uint64_t count, std::uint64_t seed,
                                const EvalContext& ctx = {});

struct VerifyOptions {
  unsigned max_n = 48;
  unsigned max_k = 4;
  std::uint64_t random_large = 50;
  std::uint64_t seed = 1;
};

int cmd_verify(const VerifyOptions& opt, Io io, const EvalContext& ctx = {});

// ---- bench -----------------------------------------------------------------

struct BenchRow {
  std::string engine;
  Natural p;
  Natural s;
  unsigned k = 0;
  std::uint64_t ops = 0;
  std::uint64_t ns = 0;
};

std::vector<BenchRow> bench_scaling();
std::vector<BenchRow> bench_engines();
void write_csv(const std::vector<BenchRow>& rows, std::ostream& os);
int cmd_bench(const std::string& suite, const std::string& out_path, Io io);

// ---- selftest --------------------------------------------------------------

struct SelftestReport {
  std::vector<std::string> lines;
  std::optional<std::string> first_failure;
  bool passed() const noexcept { return !first_failure; }
};

SelftestReport selftest(const EvalContext& ctx = {});
int cmd_selftest(Io io, const EvalContext& ctx = {});

// ---- entry point -----------------------------------------------------------

int run(int argc, const char* const* argv, Io io, const EvalContext& ctx = {});

}  // namespace rho::cli
