#include <doctest.h>

#include <cmath>
#include <set>

#include "focklab/dsl.hpp"
#include "focklab/verify.hpp"

using namespace focklab;

namespace {

Integrator quad() { return Integrator::quadrature(RuleKind::polar, 0); }

}  // namespace

TEST_CASE("derive_seed") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(7, i));
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
  CHECK(derive_seed(7, 3) != derive_seed(8, 3));
}

TEST_CASE("standard family memberships") {
  auto fam = TestFamily::standard(1.0, 1, 0);
  CHECK(fam.get("witness").in_infinity);
  CHECK_FALSE(fam.get("witness").in_finite_p);
  CHECK_FALSE(fam.get("z_witness").in_infinity);
  CHECK(fam.bounded().size() >= 6);
  for (const auto& m : fam.bounded()) CHECK(m.in_infinity);
  CHECK_THROWS(fam.get("nope"));
  auto fam2 = TestFamily::standard(1.0, 2, 0);
  for (const auto& m : fam2.members()) CHECK_FALSE(m.f.has_quadratic());
  // the seeded mixture depends on the seed
  CHECK(print_fn(TestFamily::standard(1.0, 1, 1).get("mixture").f) != print_fn(fam.get("mixture").f));
}

TEST_CASE("weighted_membership") {
  auto log_one = [](const CPoint&) { return 0.0; };
  auto m = weighted_membership(log_one, 1, 2.0, 1.0, {}, quad());
  CHECK(m.verdict == Membership::finite);
  CHECK(m.value == doctest::Approx(1.0).epsilon(1e-9));
  auto witness = EntireFn::exp_square(0.5);
  auto log_w = [&](const CPoint& z) { return witness.eval_log(z).logmag; };
  CHECK(weighted_membership(log_w, 1, 2.0, 1.0, {}, quad()).verdict == Membership::divergent);
  auto sup = weighted_membership(log_w, 1, kInf, 1.0, {}, quad());
  CHECK(sup.verdict == Membership::finite);
  CHECK(sup.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("hard tolerance") {
  CHECK(hard_tolerance(10.0, 0.0) == doctest::Approx(1e-3));
  CHECK(hard_tolerance(10.0, 1.0) == 4.0);
}

TEST_CASE("fast suites pass") {
  SuiteOptions o;
  CHECK(run_suite("gamma", o).verdict == Verdict::pass);
  CHECK(run_suite("lemma4", o).verdict == Verdict::pass);
  o.alpha = 2.0;
  auto l4 = run_suite("lemma4", o);
  CHECK(l4.verdict == Verdict::pass);
  CHECK(l4.checks.size() >= 12);
  o.alpha = 1.0;
  CHECK(run_suite("lemma5", o).verdict == Verdict::pass);
  CHECK(run_suite("prop2", o).verdict == Verdict::pass);
  CHECK(run_suite("eq3", o).verdict == Verdict::pass);
  CHECK(run_suite("coord", o).verdict == Verdict::pass);
  CHECK(run_suite("reproduce", o).verdict == Verdict::pass);
  CHECK(run_suite("thm6", o).verdict == Verdict::pass);
  CHECK(run_suite("thm7", o).verdict == Verdict::pass);
}

TEST_CASE("thm7 on documented members") {
  auto fam = TestFamily::standard(1.0, 1, 0);
  auto r = check_thm7({fam.get("one"), fam.get("K_w"), fam.get("witness")}, 1.0);
  CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("hl on documented members") {
  std::vector<FamilyMember> ms;
  for (const char* t : {"poly: z^4", "poly: 3"}) {
    FamilyMember m;
    m.name = t;
    m.f = parse_fn(t);
    ms.push_back(m);
  }
  auto r = check_hl(ms, {2.0}, 1.0, {2}, quad());
  CHECK(r.verdict == Verdict::pass);

  FamilyMember k;
  k.name = "K_w";
  k.f = EntireFn::kernel(1.0, CPoint{1.0, 0.0});
  auto r2 = check_hl({k}, {2.0}, 1.0, {1}, quad());
  CHECK(r2.verdict == Verdict::pass);
}

TEST_CASE("explorers never fail") {
  SuiteOptions o;
  o.count = 10;
  auto r = run_explorer("c14", o);
  CHECK(r.verdict == Verdict::evidence_only);
  CHECK_THROWS_AS(run_suite("c14", o), std::invalid_argument);
  CHECK_THROWS_AS(run_explorer("kernel", o), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("nope", o), std::invalid_argument);
}

TEST_CASE("suite requirements") {
  SuiteOptions o;
  CHECK_THROWS_AS(run_suite("unitary", o), std::invalid_argument);
  o.n = 2;
  CHECK_THROWS_AS(run_suite("cor10", o), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("reproduce", o), std::invalid_argument);
  o.integrator = "simpson";
  CHECK_THROWS_AS(run_suite("lemma4", o), std::invalid_argument);
}

TEST_CASE("suite reports are deterministic and carry the config") {
  SuiteOptions o;
  o.seed = 99;
  o.integrator = "both";
  o.samples = 20000;
  o.count = 10;
  auto a = run_suite("metric", o).to_json().dump();
  auto b = run_suite("metric", o).to_json().dump();
  CHECK(a == b);
  auto j = nlohmann::ordered_json::parse(a);
  CHECK(j["config"]["seed"] == 99);
  CHECK(j["config"]["integrator"] == "both");
  bool has_quad = false, has_mc = false;
  for (const auto& c : j["checks"]) {
    std::string n = c["name"];
    has_quad |= n.rfind("quad:", 0) == 0;
    has_mc |= n.rfind("mc:", 0) == 0;
  }
  CHECK(has_quad);
  CHECK(has_mc);
  o.seed = 100;
  CHECK(run_suite("metric", o).to_json().dump() != a);
}

TEST_CASE("custom function runs as an unknown member") {
  SuiteOptions o;
  o.f = "poly: z^2";
  auto r = run_suite("thm6", o);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.config["f"] == "poly: z^2");
}
