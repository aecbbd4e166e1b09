#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rho/composer.hpp"

namespace rho::cli {

struct TermRecord {
  std::string type;  // "pow" or "geom"
  std::string coeff;
  std::string exp;
  std::optional<std::string> step;
  std::optional<std::string> count;

  friend bool operator==(const TermRecord&, const TermRecord&) = default;
};

struct FactorRecord {
  std::string p;
  std::string s;

  friend bool operator==(const FactorRecord&, const FactorRecord&) = default;
};

struct OutputRecord {
  std::string engine;
  std::string k;
  std::string n;
  std::string lambda;
  std::vector<FactorRecord> factors;
  std::vector<std::vector<TermRecord>> terms;  // parallel to factors
  std::map<std::string, std::string> mod_evals;
  std::string digits10_estimate;
  std::optional<std::string> exact;
  std::uint64_t timings_ns = 0;
  std::uint64_t op_count = 0;

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

std::vector<TermRecord> term_records(const RhoValue& v);

nlohmann::json to_json(const OutputRecord& r);
// Throws Error(parse_error) when the document does not follow the schema.
OutputRecord record_from_json(const nlohmann::json& j);

}  // namespace rho::cli
