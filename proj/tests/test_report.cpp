#include <doctest.h>

#include <cmath>
#include <limits>

#include "focklab/report.hpp"

using namespace focklab;

TEST_CASE("check records and verdicts") {
  SuiteReport r("demo", 5);
  auto& a = r.check_le("le", 1.0, 2.0, 0.0, 0.0);
  CHECK(a.pass);
  CHECK(a.margin == 1.0);
  auto& b = r.check_close("close", 1.0, 1.5, 0.1, 0.4);
  CHECK_FALSE(b.pass);
  CHECK(b.margin == doctest::Approx(-0.1));
  r.check_le("nan fails", std::nan(""), 1.0, 0.0, 0.0);
  CHECK_FALSE(r.checks.back().pass);
  r.check_le("-inf passes", -std::numeric_limits<double>::infinity(), 0.0, 0.0, 0.0);
  CHECK(r.checks.back().pass);
  r.check_flag("flag", true, 1, 1).hard = false;
  r.finalize();
  CHECK(r.verdict == Verdict::fail);
  CHECK(r.failures() == 2);
  CHECK_FALSE(r.passed());

  SuiteReport ok("demo", 0);
  ok.check_flag("soft", false, 0, 1).hard = false;
  ok.finalize();
  CHECK(ok.verdict == Verdict::pass);

  SuiteReport ev("demo", 0);
  ev.evidence_only = true;
  ev.check_flag("x", false, 0, 1);
  ev.finalize();
  CHECK(ev.verdict == Verdict::evidence_only);
  CHECK(ev.passed());
  CHECK(to_string(Verdict::evidence_only) == "evidence-only");
}

TEST_CASE("envelopes") {
  auto e = Envelope::of("r", {3.0, 1.0, std::nan(""), 2.0, 10.0});
  CHECK(e.count == 4);
  CHECK(e.min == 1.0);
  CHECK(e.max == 10.0);
  CHECK(e.median == 2.5);
  CHECK(Envelope::of("empty", {}).count == 0);
}

TEST_CASE("JSON schema") {
  SuiteReport r("demo", 42);
  r.config["alpha"] = 1.0;
  r.check_le("a,b", 1.0, std::numeric_limits<double>::infinity(), 0.0, 0.0, "quad");
  r.add_envelope("ratio", {1.0, 2.0});
  auto& t = r.add_table("tbl", {"x", "y"});
  t.rows.push_back({1.0, 2.0});
  r.finalize();
  auto j = r.to_json();
  std::vector<std::string> keys;
  for (auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"suite", "config", "checks", "envelopes", "tables", "notes", "verdict",
                                         "seed", "version"});
  const auto& c = j["checks"][0];
  for (const char* k : {"name", "lhs", "rhs", "stderr", "margin", "pass"}) CHECK(c.contains(k));
  CHECK(c["rhs"] == "inf");
  CHECK(c["margin"] == "inf");
  CHECK(j["seed"] == 42);
  CHECK(j["verdict"] == "pass");
  CHECK_FALSE(j.contains("timestamp"));
  CHECK(r.to_json("2026-01-01T00:00:00Z")["timestamp"] == "2026-01-01T00:00:00Z");
  CHECK(r.to_json().dump() == j.dump());
  CHECK(json_number(std::nan("")) == "nan");
  CHECK(json_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("CSV flattening") {
  SuiteReport r("demo", 1);
  r.check_le("plain", 1.0, 2.0, 0.0, 0.0, "quad");
  r.check_close("with \"quote\", comma", 0.5, 0.5, 0.01, 0.0);
  std::string csv = r.to_csv();
  CHECK(csv.rfind("suite,name,relation,lhs,rhs,stderr,margin,pass,hard,method\n", 0) == 0);
  CHECK(csv.find("demo,plain,<=,1,2,0,1,true,true,quad\n") != std::string::npos);
  CHECK(csv.find("\"with \"\"quote\"\", comma\"") != std::string::npos);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 3);

  Table t{"t", {"r", "d"}, {{0.5, std::numeric_limits<double>::infinity()}}};
  CHECK(r.table_csv(t) == "r,d\n0.5,inf\n");
}
