#include "rho_cli/output_record.hpp"

#include <type_traits>

#include "rho/error.hpp"

namespace rho::cli {

std::vector<TermRecord> term_records(const RhoValue& v) {
  std::vector<TermRecord> out;
  for (const Term& t : v.terms()) {
    std::visit(
        [&](const auto& term) {
          using T = std::decay_t<decltype(term)>;
          if constexpr (std::is_same_v<T, PowerTerm>) {
            out.push_back({"pow", to_decimal(term.coeff), to_decimal(term.exp), {}, {}});
          } else {
            out.push_back({"geom", to_decimal(term.coeff), to_decimal(term.exp0),
                           to_decimal(term.step), to_decimal(term.count)});
          }
        },
        t);
  }
  return out;
}

nlohmann::json to_json(const OutputRecord& r) {
  nlohmann::json j;
  j["engine"] = r.engine;
  j["k"] = r.k;
  j["n"] = r.n;
  j["lambda"] = r.lambda;
  j["factors"] = nlohmann::json::array();
  for (const auto& f : r.factors) j["factors"].push_back({{"p", f.p}, {"s", f.s}});
  j["terms"] = nlohmann::json::array();
  for (const auto& list : r.terms) {
    auto arr = nlohmann::json::array();
    for (const auto& t : list) {
      nlohmann::json jt{{"type", t.type}, {"coeff", t.coeff}, {"exp", t.exp}};
      if (t.step) jt["step"] = *t.step;
      if (t.count) jt["count"] = *t.count;
      arr.push_back(std::move(jt));
    }
    j["terms"].push_back(std::move(arr));
  }
  j["mod_evals"] = r.mod_evals;
  j["digits10_estimate"] = r.digits10_estimate;
  if (r.exact) j["exact"] = *r.exact;
  j["timings_ns"] = r.timings_ns;
  j["op_count"] = r.op_count;
  return j;
}

OutputRecord record_from_json(const nlohmann::json& j) {
  try {
    OutputRecord r;
    r.engine = j.at("engine").get<std::string>();
    r.k = j.at("k").get<std::string>();
    r.n = j.at("n").get<std::string>();
    r.lambda = j.at("lambda").get<std::string>();
    for (const auto& f : j.at("factors")) {
      r.factors.push_back({f.at("p").get<std::string>(), f.at("s").get<std::string>()});
    }
    for (const auto& list : j.at("terms")) {
      std::vector<TermRecord> terms;
      for (const auto& t : list) {
        TermRecord tr{t.at("type").get<std::string>(), t.at("coeff").get<std::string>(),
                      t.at("exp").get<std::string>(), {}, {}};
        if (tr.type != "pow" && tr.type != "geom") {
          throw Error(Errc::parse_error, "unknown term type '" + tr.type + "'");
        }
        if (t.contains("step")) tr.step = t.at("step").get<std::string>();
        if (t.contains("count")) tr.count = t.at("count").get<std::string>();
        terms.push_back(std::move(tr));
      }
      r.terms.push_back(std::move(terms));
    }
    if (r.terms.size() != r.factors.size()) {
      throw Error(Errc::parse_error, "terms and factors have different lengths");
    }
    r.mod_evals = j.at("mod_evals").get<std::map<std::string, std::string>>();
    r.digits10_estimate = j.at("digits10_estimate").get<std::string>();
    if (j.contains("exact")) r.exact = j.at("exact").get<std::string>();
    r.timings_ns = j.at("timings_ns").get<std::uint64_t>();
    r.op_count = j.at("op_count").get<std::uint64_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("malformed output record: ") + e.what());
  }
}

}  // namespace rho::cli
