#include "focklab/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "focklab/dsl.hpp"

#ifndef FOCKLAB_VERSION
#define FOCKLAB_VERSION "0.0.0"
#endif

namespace focklab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::evidence_only: return "evidence-only";
  }
  return "?";
}

ojson json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Envelope Envelope::of(std::string name, std::vector<double> values) {
  Envelope e;
  e.name = std::move(name);
  std::erase_if(values, [](double v) { return std::isnan(v); });
  e.count = values.size();
  if (values.empty()) return e;
  std::sort(values.begin(), values.end());
  e.min = values.front();
  e.max = values.back();
  std::size_t m = values.size() / 2;
  e.median = values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
  return e;
}

SuiteReport::SuiteReport(std::string suite_id, std::uint64_t seed_value)
    : suite(std::move(suite_id)), seed(seed_value), version(FOCKLAB_VERSION) {}

CheckRecord& SuiteReport::check_le(std::string name, double lhs, double rhs, double stderr_value, double tol,
                                   std::string method) {
  CheckRecord c{std::move(name), lhs, rhs, stderr_value, rhs + tol - lhs, false, true, "<=", std::move(method)};
  c.pass = c.margin >= 0.0;  // NaN fails
  if (std::isinf(lhs) && lhs < 0) c.pass = true;
  checks.push_back(std::move(c));
  return checks.back();
}

CheckRecord& SuiteReport::check_close(std::string name, double lhs, double rhs, double stderr_value, double tol,
                                      std::string method) {
  CheckRecord c{std::move(name), lhs, rhs, stderr_value, tol - std::abs(lhs - rhs), false, true, "~=",
                std::move(method)};
  c.pass = c.margin >= 0.0;
  checks.push_back(std::move(c));
  return checks.back();
}

CheckRecord& SuiteReport::check_flag(std::string name, bool ok, double lhs, double rhs, std::string method) {
  checks.push_back({std::move(name), lhs, rhs, 0.0, ok ? 0.0 : -1.0, ok, true, "agree", std::move(method)});
  return checks.back();
}

void SuiteReport::add_envelope(std::string name, std::vector<double> values) {
  envelopes.push_back(Envelope::of(std::move(name), std::move(values)));
}

Table& SuiteReport::add_table(std::string name, std::vector<std::string> columns) {
  tables.push_back({std::move(name), std::move(columns), {}});
  return tables.back();
}

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) {
    return c.hard && !c.pass;
  }));
}

void SuiteReport::finalize() {
  if (evidence_only) {
    verdict = Verdict::evidence_only;
    return;
  }
  verdict = failures() == 0 ? Verdict::pass : Verdict::fail;
}

ojson SuiteReport::to_json(const std::optional<std::string>& timestamp) const {
  ojson j;
  j["suite"] = suite;
  j["config"] = config;
  ojson cs = ojson::array();
  for (const auto& c : checks) {
    ojson r;
    r["name"] = c.name;
    r["relation"] = c.relation;
    r["lhs"] = json_number(c.lhs);
    r["rhs"] = json_number(c.rhs);
    r["stderr"] = json_number(c.stderr_);
    r["margin"] = json_number(c.margin);
    r["pass"] = c.pass;
    r["hard"] = c.hard;
    r["method"] = c.method;
    cs.push_back(std::move(r));
  }
  j["checks"] = std::move(cs);
  ojson env = ojson::array();
  for (const auto& e : envelopes) {
    env.push_back({{"name", e.name},
                   {"min", json_number(e.min)},
                   {"median", json_number(e.median)},
                   {"max", json_number(e.max)},
                   {"count", e.count}});
  }
  j["envelopes"] = std::move(env);
  if (!tables.empty()) {
    ojson ts = ojson::object();
    for (const auto& t : tables) {
      ojson rows = ojson::array();
      for (const auto& row : t.rows) {
        ojson r = ojson::array();
        for (double v : row) r.push_back(json_number(v));
        rows.push_back(std::move(r));
      }
      ts[t.name] = {{"columns", t.columns}, {"rows", std::move(rows)}};
    }
    j["tables"] = std::move(ts);
  }
  j["notes"] = notes;
  j["verdict"] = to_string(verdict);
  j["seed"] = seed;
  j["version"] = version;
  if (timestamp) j["timestamp"] = *timestamp;
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return format_double(x);
}

}  // namespace

std::string SuiteReport::to_csv() const {
  std::ostringstream out;
  out << "suite,name,relation,lhs,rhs,stderr,margin,pass,hard,method\n";
  for (const auto& c : checks) {
    out << csv_field(suite) << ',' << csv_field(c.name) << ',' << csv_field(c.relation) << ',' << csv_number(c.lhs)
        << ',' << csv_number(c.rhs) << ',' << csv_number(c.stderr_) << ',' << csv_number(c.margin) << ','
        << (c.pass ? "true" : "false") << ',' << (c.hard ? "true" : "false") << ',' << csv_field(c.method) << '\n';
  }
  return out.str();
}

std::string SuiteReport::table_csv(const Table& t) const {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_field(t.columns[i]);
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_number(row[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace focklab
