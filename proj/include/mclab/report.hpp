#pragma once

// Suite reports and their canonical JSON form: object keys sorted, doubles
// in shortest round-trip form, seeds as lowercase hex strings. Equal
// inputs give byte-identical files.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "verdict.hpp"

namespace mclab {

inline constexpr const char* report_version = "mclab-report/1";

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string hex_seed(std::uint64_t seed) {
  char buf[2 + 16 + 1];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(seed));
  return buf;
}

enum class Relation { at_most, at_least };

struct CheckRecord {
  std::string name;
  Verdict verdict = Verdict::pass;
  double value = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::at_most;
  nlohmann::json witness;  // null when there is nothing to show

  /// PASS iff value <= tolerance (or >= for at_least).
  static CheckRecord bound(std::string name, double value, double tolerance, Relation rel = Relation::at_most,
                           nlohmann::json witness = nullptr) {
    const bool ok = rel == Relation::at_most ? value <= tolerance : value >= tolerance;
    CheckRecord c{std::move(name), ok ? Verdict::pass : Verdict::fail, value, tolerance, rel, std::move(witness)};
    if (ok) c.witness = nullptr;
    return c;
  }
};

struct SuiteReport {
  std::string suite;
  std::string group;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<std::string> norms;
  std::vector<CheckRecord> checks;
  nlohmann::json data;  // suite-specific tables

  CheckRecord& add(CheckRecord c) { return checks.emplace_back(std::move(c)); }

  Verdict verdict() const noexcept {
    Verdict v = Verdict::pass;
    for (const auto& c : checks) v = combine(v, c.verdict);
    return v;
  }
};

inline nlohmann::json to_json(const CheckRecord& c) {
  return {{"name", c.name},
          {"verdict", std::string(to_string(c.verdict))},
          {"value", c.value},
          {"tolerance", c.tolerance},
          {"relation", c.relation == Relation::at_most ? "<=" : ">="},
          {"witness", c.witness}};
}

inline nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  nlohmann::json j = {{"version", report_version},
                      {"suite", r.suite},
                      {"group", r.group},
                      {"seed", hex_seed(r.seed)},
                      {"trials", r.trials},
                      {"norms", r.norms},
                      {"checks", checks},
                      {"verdict", std::string(to_string(r.verdict()))}};
  if (!r.data.is_null()) j["data"] = r.data;
  return j;
}

inline std::string canonical_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw io_error("failed writing '" + path.string() + "'");
}

inline void emit_report(const SuiteReport& report, const std::filesystem::path& path) {
  write_text_file(path, canonical_dump(to_json(report)));
}

}  // namespace mclab
