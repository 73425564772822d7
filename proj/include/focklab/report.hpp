#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace focklab {

using ojson = nlohmann::ordered_json;

enum class Verdict { pass, fail, evidence_only };
std::string to_string(Verdict v);

// One comparison. margin > 0 means the check holds with room to spare (tolerance included).
struct CheckRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double stderr_ = 0.0;
  double margin = 0.0;
  bool pass = true;
  bool hard = true;         // soft checks are reported but do not affect the verdict
  std::string relation;     // "<=", ">=", "~=", "agree"
  std::string method;
};

// min / median / max of a set of empirical ratios.
struct Envelope {
  std::string name;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  std::size_t count = 0;

  static Envelope of(std::string name, std::vector<double> values);
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct SuiteReport {
  std::string suite;
  ojson config = ojson::object();
  std::vector<CheckRecord> checks;
  std::vector<Envelope> envelopes;
  std::vector<Table> tables;
  std::vector<std::string> notes;
  bool evidence_only = false;
  Verdict verdict = Verdict::pass;
  std::uint64_t seed = 0;
  std::string version;

  SuiteReport(std::string suite_id, std::uint64_t seed_value);

  // lhs <= rhs + tol
  CheckRecord& check_le(std::string name, double lhs, double rhs, double stderr_value, double tol,
                        std::string method = {});
  // |lhs - rhs| <= tol
  CheckRecord& check_close(std::string name, double lhs, double rhs, double stderr_value, double tol,
                           std::string method = {});
  // boolean agreement (lhs and rhs carry 0/1 codes)
  CheckRecord& check_flag(std::string name, bool ok, double lhs, double rhs, std::string method = {});

  void add_envelope(std::string name, std::vector<double> values);
  Table& add_table(std::string name, std::vector<std::string> columns);
  void note(std::string text) { notes.push_back(std::move(text)); }

  // Sets the verdict from the hard checks (or evidence-only).
  void finalize();
  bool passed() const { return verdict != Verdict::fail; }
  std::size_t failures() const;

  ojson to_json(const std::optional<std::string>& timestamp = std::nullopt) const;
  // Flattened checks: suite,name,relation,lhs,rhs,stderr,margin,pass,hard,method
  std::string to_csv() const;
  std::string table_csv(const Table& t) const;
};

// JSON-safe number: non-finite values become the strings "inf", "-inf", "nan".
ojson json_number(double x);

}  // namespace focklab
