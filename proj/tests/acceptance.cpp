// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "focklab/verify.hpp"

using namespace focklab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// runs the suite and folds its verdict into the outcome
SuiteReport run(Outcome& out, const std::string& id, SuiteOptions o) {
  SuiteReport r = run_suite(id, o);
  if (!r.passed()) {
    out.ok = false;
    for (const auto& c : r.checks)
      if (c.hard && !c.pass) {
        out.detail += " [" + id + " failed: " + c.name + "]";
        break;
      }
  }
  return r;
}

double max_rel_residual(const SuiteReport& r, const std::string& needle) {
  double worst = 0.0;
  for (const auto& c : r.checks)
    if (c.name.find(needle) != std::string::npos && c.rhs != 0.0)
      worst = std::max(worst, std::abs(c.lhs - c.rhs) / std::abs(c.rhs));
  return worst;
}

std::size_t count_checks(const SuiteReport& r) { return r.checks.size(); }

char buf[256];

Outcome kernel_integral() {
  Outcome o;
  SuiteOptions opt;
  opt.seed = 1;
  auto r = run(o, "kernel", opt);
  std::snprintf(buf, sizeof buf, "%zu quad and MC checks over alpha, beta in {0.5,1,2}, |z| <= 2, n in {1,2}",
                count_checks(r));
  o.detail = buf + o.detail;
  return o;
}

Outcome lemma4() {
  Outcome o;
  double worst = 0.0;
  for (int n : {1, 2})
    for (double alpha : {1.0, 2.0}) {
      SuiteOptions opt;
      opt.n = n;
      opt.alpha = alpha;
      if (n == 1) opt.order = 64;
      auto r = run(o, "lemma4", opt);
      worst = std::max(worst, max_rel_residual(r, ""));
    }
  if (worst > 1e-6) o.ok = false;
  std::snprintf(buf, sizeof buf, "max relative residual %.2e on the 12-point grid (bound 1e-6)", worst);
  o.detail = buf + o.detail;
  return o;
}

Outcome reproduce() {
  Outcome o;
  SuiteOptions opt;
  opt.order = 64;
  auto r = run(o, "reproduce", opt);
  std::snprintf(buf, sizeof buf, "%zu checks, polynomials of degree <= 6 at order 64", count_checks(r));
  o.detail = buf + o.detail;
  return o;
}

Outcome norms() {
  Outcome o;
  std::size_t checks = 0;
  for (int n : {1, 2}) {
    SuiteOptions opt;
    opt.n = n;
    opt.seed = 3;
    opt.integrator = n == 1 ? "both" : "quad";
    checks += count_checks(run(o, "norms", opt));
  }
  std::snprintf(buf, sizeof buf, "%zu checks, p in {0.5,1,2,4,inf}, 10 kernels", checks);
  o.detail = buf + o.detail;
  return o;
}

Outcome metric() {
  Outcome o;
  std::size_t checks = 0;
  for (int n : {1, 2}) {
    SuiteOptions opt;
    opt.n = n;
    opt.seed = 4;
    opt.count = 100;
    checks += count_checks(run(o, "metric", opt));
  }
  SuiteOptions mc;
  mc.seed = 4;
  mc.count = 100;
  mc.integrator = "mc";
  mc.samples = 20000;
  checks += count_checks(run(o, "metric", mc));
  std::snprintf(buf, sizeof buf, "%zu checks, 100 triples, d_alpha and both distance_p variants", checks);
  o.detail = buf + o.detail;
  return o;
}

Outcome prop2() {
  Outcome o;
  for (int n : {1, 2})
    for (auto [a, b] : {std::pair{0.5, 1.0}, std::pair{1.0, 1.0}, std::pair{1.0, 2.0}}) {
      SuiteOptions opt;
      opt.n = n;
      opt.alpha = a;
      opt.beta = b;
      run(o, "prop2", opt);
    }
  o.detail = "sandwich at |z| in {0.5,1,2,3} and slope at |z| = 1e-3, n in {1,2}" + o.detail;
  return o;
}

Outcome lemma5() {
  Outcome o;
  for (int n : {1, 2})
    for (double alpha : {1.0, 2.0}) {
      SuiteOptions opt;
      opt.n = n;
      opt.alpha = alpha;
      run(o, "lemma5", opt);
    }
  o.detail = "8 radii, alpha in {1,2}, n in {1,2}" + o.detail;
  return o;
}

Outcome thm6() {
  Outcome o;
  std::size_t members = 0;
  for (int n : {1, 2}) {
    SuiteOptions opt;
    opt.n = n;
    opt.seed = 6;
    opt.count = 200;
    auto r = run(o, "thm6", opt);
    members = std::max(members, r.config["members"].size());
  }
  if (members < 6) o.ok = false;
  std::snprintf(buf, sizeof buf, "200 pairs x %zu bounded members, n in {1,2}", members);
  o.detail = buf + o.detail;
  return o;
}

Outcome hardy_littlewood() {
  Outcome o;
  SuiteOptions opt;
  auto r = run(o, "hl", opt);
  // the witness must be divergent on both sides for finite p and finite on both at p = inf
  const auto& names = r.config["members"];
  double witness = -1;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == "witness") witness = static_cast<double>(i);
  int rows = 0;
  for (const auto& t : r.tables) {
    if (t.name != "verdicts") continue;
    for (const auto& row : t.rows) {
      if (row[0] != witness) continue;
      ++rows;
      double want = std::isinf(row[1]) ? 1.0 : 0.0;
      if (row[3] != want || row[4] != want) {
        o.ok = false;
        o.detail += " [witness verdict mismatch]";
      }
    }
  }
  if (rows != 12) o.ok = false;
  std::snprintf(buf, sizeof buf, "%zu members, N in {1,2,3}, p in {0.5,1,2,inf}; witness rows %d",
                names.size(), rows);
  o.detail = buf + o.detail;
  return o;
}

Outcome incomplete_gamma_values() {
  Outcome o;
  auto r = run(o, "gamma", {});
  double ratio = incomplete_gamma(3, 50.0) / (2500.0 * std::exp(-50.0));
  if (std::abs(ratio - 1.0408) > 1e-4) o.ok = false;
  std::snprintf(buf, sizeof buf, "Gamma(3,50)/(50^2 e^-50) = %.6f; %zu checks", ratio, count_checks(r));
  o.detail = buf + o.detail;
  return o;
}

Outcome determinism() {
  Outcome o;
  struct Case {
    std::string id;
    SuiteOptions opt;
  };
  std::vector<Case> cases;
  SuiteOptions a;
  a.seed = 11;
  a.integrator = "both";
  a.samples = 20000;
  a.count = 20;
  cases.push_back({"metric", a});
  SuiteOptions b;
  b.seed = 12;
  b.integrator = "mc";
  b.samples = 20000;
  cases.push_back({"kernel", b});
  cases.push_back({"thm6", b});
  int same = 0;
  for (const auto& c : cases) {
    std::string x = run_suite(c.id, c.opt).to_json().dump();
    std::string y = run_suite(c.id, c.opt).to_json().dump();
    if (x == y) ++same;
    else o.ok = false;
  }
  std::snprintf(buf, sizeof buf, "%d/%zu reruns byte-identical", same, cases.size());
  o.detail = buf;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"kernel-integral oracle", kernel_integral},
      {"second-moment identity", lemma4},
      {"reproducing property", reproduce},
      {"unit norms of 1 and k_w", norms},
      {"metric axioms", metric},
      {"distance sandwich and slope", prop2},
      {"energy sandwich", lemma5},
      {"Lipschitz forward bound", thm6},
      {"derivative characterization consistency", hardy_littlewood},
      {"incomplete gamma", incomplete_gamma_values},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %s: %s (%.1fs)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].label, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
