#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "verify_common.hpp"

namespace focklab {

using namespace detail;

DistanceParams SuiteOptions::distance_params() const {
  if (beta) return DistanceParams{alpha, *beta, 1.0};
  return DistanceParams::d_alpha(alpha);
}

std::vector<Integrator> SuiteOptions::integrators() const {
  Integrator q = Integrator::quadrature(RuleKind::polar, order);
  q.seed = seed;
  Integrator m = Integrator::monte_carlo(samples, seed);
  if (integrator == "quad") return {q};
  if (integrator == "mc") return {m};
  if (integrator == "both") return {q, m};
  throw std::invalid_argument("unknown integrator '" + integrator + "' (expected quad, mc or both)");
}

ojson SuiteOptions::to_json() const {
  ojson j;
  j["alpha"] = alpha;
  j["beta"] = beta ? ojson(*beta) : ojson(nullptr);
  j["n"] = n;
  j["p"] = p ? json_number(*p) : ojson(nullptr);
  j["seed"] = seed;
  j["integrator"] = integrator;
  j["order"] = order;
  j["samples"] = samples;
  j["count"] = count;
  j["f"] = f;
  j["N"] = N ? ojson(*N) : ojson(nullptr);
  j["c"] = c ? ojson(*c) : ojson(nullptr);
  return j;
}

namespace {

struct Entry {
  std::string description;
  bool uses_integrator = true;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r{
      {"kernel", {"kernel modulus integral e^{beta^2|z|^2/(4 alpha)} by quadrature and Monte Carlo", false}},
      {"metric", {"metric axioms for d and both distance_p variants on random triples"}},
      {"prop2", {"two-sided bound e^{beta^2|z|^2/(4 alpha)} -+ 1 on d(z,0) and the small-|z| slope"}},
      {"lemma3", {"dual description of d_alpha: test-function lower bound against 2^n d_alpha"}},
      {"lemma4", {"closed form of int |u|^2 |e^{alpha z.u}| d lambda_{alpha/2}"}},
      {"lemma5", {"|z| e^{alpha|z|^2/2} <= E(z) <= sqrt(2n/alpha + |z|^2) e^{alpha|z|^2/2}"}},
      {"eq3", {"d_alpha(z,w)/|z-w| against alpha E(z) as w -> z"}},
      {"coord", {"coordinate energies int |u_k e^{alpha z.u}| d lambda_{alpha/2}"}},
      {"unitary", {"unitary invariance of d on C^2"}},
      {"thm6", {"|f(z)-f(w)| <= 2^n ||f||_inf d_alpha(z,w) over the bounded family"}},
      {"thm7", {"sup-norm, partial, gradient and radial-derivative seminorms agree in finiteness", false}},
      {"hl1", {"f in F^p vs f'/(1+|z|) in L^p"}},
      {"hl", {"f in F^p vs f^(N)/(1+|z|)^N in L^p, N <= 3"}},
      {"cor10", {"f in F^p vs f'/z + c f/z^2 in F^p"}},
      {"cor12", {"p = 1: f - f(0) in L^1 vs Rf/(1+|z|^2) in L^1, with the radial-integral bound"}},
      {"reproduce", {"P_alpha f = f for polynomials, P conj(u) = 0, P |u|^2 = 1/alpha"}},
      {"norms", {"||1|| = ||k_w|| = 1 for p in {0.5,1,2,4,inf}; monomial moments"}},
      {"gamma", {"incomplete gamma recurrence, direct integral and asymptotics", false}},
      {"c13", {"evidence: f in F^p vs R^N f/(1+|z|^2)^N in L^p"}},
      {"c14", {"evidence: Lipschitz condition with the derivative-based candidate g"}},
  };
  return r;
}

int count_or(const SuiteOptions& o, int fallback) { return o.count > 0 ? o.count : fallback; }

std::vector<FamilyMember> members_for(const SuiteOptions& o, bool bounded_only) {
  if (!o.f.empty()) {
    FamilyMember m;
    m.name = "f";
    m.f = parse_fn(o.f, o.n);
    m.note = o.f;
    m.memberships_known = false;
    return {m};
  }
  TestFamily fam = TestFamily::standard(o.alpha, o.n, o.seed);
  return bounded_only ? fam.bounded() : fam.members();
}

std::vector<double> p_list_or(const SuiteOptions& o, std::vector<double> fallback) {
  if (o.p) return {*o.p};
  return fallback;
}

std::vector<CPoint> lemma4_grid(int n) {
  std::vector<CPoint> pts;
  const double pi = std::numbers::pi;
  for (double r : {0.0, 0.5, 1.0, std::sqrt(2.0)}) {
    for (int j = 0; j < 3; ++j) {
      if (n == 1) {
        pts.push_back(CPoint{std::polar(r, 2.0 * pi * j / 3.0)});
      } else {
        double s = r / std::sqrt(2.0);
        pts.push_back(CPoint{std::polar(s, 0.0), std::polar(s, 2.0 * pi * j / 3.0)});
      }
    }
  }
  return pts;
}

SuiteReport run_one(const std::string& id, const SuiteOptions& o, const Integrator& integ) {
  const std::vector<double> ps{0.5, 1.0, 2.0, kInf};
  if (id == "kernel") return check_kernel_integral(o);
  if (id == "metric") return check_metric_axioms(o.distance_params(), o.n, count_or(o, 100), o.seed, integ);
  if (id == "prop2") return check_prop2(o.distance_params(), o.n, {0.5, 1.0, 2.0, 3.0}, o.seed, integ);
  if (id == "lemma3") return check_lemma3(o.alpha, o.n, count_or(o, 20), o.seed, integ);
  if (id == "lemma4") return check_lemma4(o.alpha, lemma4_grid(o.n), integ);
  if (id == "lemma5")
    return check_lemma5(o.alpha, o.n, {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}, o.seed, integ);
  if (id == "eq3") return check_eq3(o.alpha, o.n, count_or(o, 20), o.seed, integ);
  if (id == "coord") return check_coord_energy(o.alpha, o.n, o.seed, integ);
  if (id == "unitary") {
    if (o.n != 2) throw std::invalid_argument("unitary: requires --n 2");
    return check_unitary(o.distance_params(), count_or(o, 20), o.seed, integ);
  }
  if (id == "thm6") return check_thm6(members_for(o, true), o.alpha, count_or(o, 200), o.seed, integ);
  if (id == "thm7") return check_thm7(members_for(o, false), o.alpha);
  if (id == "hl1") return check_hl(members_for(o, false), p_list_or(o, ps), o.alpha, {1}, integ, "hl1");
  if (id == "hl") {
    std::vector<int> Ns = o.N ? std::vector<int>{*o.N} : (o.n == 1 ? std::vector<int>{1, 2, 3} : std::vector<int>{1, 2});
    return check_hl(members_for(o, false), p_list_or(o, ps), o.alpha, Ns, integ, "hl");
  }
  if (id == "cor10") {
    if (o.n != 1) throw std::invalid_argument("cor10: requires --n 1");
    std::vector<double> cs = o.c ? std::vector<double>{*o.c} : std::vector<double>{0.0, 1.0, -2.0, 3.0};
    return check_cor10(members_for(o, false), cs, p_list_or(o, ps), o.alpha, 32, integ);
  }
  if (id == "cor12") return check_cor12_p1(members_for(o, false), o.alpha, integ);
  if (id == "reproduce") {
    if (o.n != 1) throw std::invalid_argument("reproduce: requires --n 1");
    return check_reproduce(o.alpha, 6, o.seed, integ);
  }
  if (id == "norms") return check_norms(o.alpha, o.n, count_or(o, 10), o.seed, integ);
  if (id == "gamma") return check_gamma();
  if (id == "c13") {
    std::vector<int> Ns = o.N ? std::vector<int>{*o.N} : std::vector<int>{1, 2};
    return explore_conjecture13(members_for(o, false), p_list_or(o, ps), o.alpha, Ns, integ);
  }
  if (id == "c14") return explore_conjecture14(members_for(o, false), o.p.value_or(2.0), o.alpha, count_or(o, 50), o.seed, integ);
  throw std::invalid_argument("unknown suite id: " + id);
}

std::string method_tag(const Integrator& i) { return i.method == Method::quadrature ? "quad" : "mc"; }

SuiteReport run_any(const std::string& id, const SuiteOptions& o) {
  const auto& reg = registry();
  auto it = reg.find(id);
  if (it == reg.end()) throw std::invalid_argument("unknown suite id: " + id);
  std::vector<Integrator> integs = o.integrators();
  if (!it->second.uses_integrator) integs.resize(1);
  std::vector<SuiteReport> runs;
  for (const auto& integ : integs) runs.push_back(run_one(id, o, integ));
  SuiteReport out = std::move(runs.front());
  if (runs.size() > 1) {
    auto prefix = [](const std::string& tag, SuiteReport& r) {
      for (auto& c : r.checks) c.name = tag + ":" + c.name;
      for (auto& e : r.envelopes) e.name = tag + ":" + e.name;
      for (auto& t : r.tables) t.name = tag + ":" + t.name;
      for (auto& s : r.notes) s = tag + ":" + s;
    };
    prefix(method_tag(integs[0]), out);
    for (std::size_t i = 1; i < runs.size(); ++i) {
      prefix(method_tag(integs[i]), runs[i]);
      auto& r = runs[i];
      out.checks.insert(out.checks.end(), r.checks.begin(), r.checks.end());
      out.envelopes.insert(out.envelopes.end(), r.envelopes.begin(), r.envelopes.end());
      out.tables.insert(out.tables.end(), r.tables.begin(), r.tables.end());
      out.notes.insert(out.notes.end(), r.notes.begin(), r.notes.end());
    }
  }
  ojson cfg = o.to_json();
  for (auto& [k, v] : out.config.items()) cfg[k] = v;
  out.config = std::move(cfg);
  out.seed = o.seed;
  out.finalize();
  return out;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids{"kernel", "metric", "prop2",  "lemma3", "lemma4",    "lemma5",
                                            "eq3",    "coord",  "unitary", "thm6",  "thm7",      "hl1",
                                            "hl",     "cor10",  "cor12",  "reproduce", "norms", "gamma"};
  return ids;
}

const std::vector<std::string>& explorer_ids() {
  static const std::vector<std::string> ids{"c13", "c14"};
  return ids;
}

std::string suite_description(const std::string& id) {
  auto it = registry().find(id);
  if (it == registry().end()) throw std::invalid_argument("unknown suite id: " + id);
  return it->second.description;
}

SuiteReport run_suite(const std::string& id, const SuiteOptions& opt) {
  if (std::find(suite_ids().begin(), suite_ids().end(), id) == suite_ids().end())
    throw std::invalid_argument("unknown suite id: " + id + (std::find(explorer_ids().begin(), explorer_ids().end(), id) != explorer_ids().end() ? " (use explore)" : ""));
  return run_any(id, opt);
}

SuiteReport run_explorer(const std::string& id, const SuiteOptions& opt) {
  if (std::find(explorer_ids().begin(), explorer_ids().end(), id) == explorer_ids().end())
    throw std::invalid_argument("unknown conjecture id: " + id);
  return run_any(id, opt);
}

}  // namespace focklab
