// focklab command-line driver.
#include <chrono>
#include <cmath>
#include <ctime>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "focklab/analysis.hpp"
#include "focklab/dsl.hpp"
#include "focklab/family.hpp"
#include "focklab/verify.hpp"

namespace fs = std::filesystem;
using namespace focklab;

namespace {

struct Options {
  std::string f;
  std::string p = "2";
  double alpha = 1.0;
  std::optional<double> beta;
  int n = 1;
  std::string z, w;
  double x = 1.0;
  int k = 0;
  std::string integrator = "quad";
  int order = 0;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  std::string tables;
  bool timestamp = true;
  int count = 0;
  std::optional<int> N;
  std::optional<double> c;
  std::string id;
};

class UsageError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(v > 0.0)) throw UsageError("--p must be a positive number or 'inf', got '" + s + "'");
  return v;
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// write to a sibling temporary, then rename over the target
void write_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << text;
    os.flush();
    if (!os) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, path);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
  } else {
    write_atomic(o.out, text);
  }
}

ojson config_json(const Options& o, const std::string& command) {
  ojson c;
  c["command"] = command;
  if (!o.f.empty()) c["f"] = o.f;
  c["p"] = o.p;
  c["alpha"] = o.alpha;
  c["beta"] = o.beta ? ojson(*o.beta) : ojson(nullptr);
  c["n"] = o.n;
  if (!o.z.empty()) c["z"] = o.z;
  if (!o.w.empty()) c["w"] = o.w;
  c["integrator"] = o.integrator;
  c["order"] = o.order;
  c["samples"] = o.samples;
  c["seed"] = o.seed;
  return c;
}

std::vector<Integrator> integrators(const Options& o) {
  SuiteOptions so;
  so.integrator = o.integrator;
  so.order = o.order;
  so.samples = o.samples;
  so.seed = o.seed;
  return so.integrators();
}

ojson estimate_json(const Estimate& e) {
  ojson j;
  j["value"] = json_number(e.value);
  j["stderr"] = json_number(e.std_error);
  j["method"] = e.method;
  j["count"] = e.count;
  j["error_proxy"] = json_number(e.error_proxy);
  j["finite"] = e.finite;
  return j;
}

// one result document for the computing subcommands
void emit_result(const Options& o, const std::string& command, ojson results) {
  ojson doc;
  doc["command"] = command;
  doc["config"] = config_json(o, command);
  doc["results"] = std::move(results);
  doc["seed"] = o.seed;
  doc["version"] = FOCKLAB_VERSION;
  if (o.timestamp) doc["timestamp"] = utc_now();
  if (o.format == "csv") {
    std::string s = "name,value,stderr,method\n";
    for (const auto& r : doc["results"]) {
      auto field = [&](const char* k) -> std::string {
        if (!r.contains(k)) return "";
        const auto& v = r[k];
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number()) return format_double(v.get<double>());
        return v.dump();
      };
      s += field("name") + "," + field("value") + "," + field("stderr") + "," + field("method") + "\n";
    }
    emit(o, s);
  } else {
    emit(o, doc.dump(2) + "\n");
  }
}

ojson named(std::string name, ojson j) {
  ojson out;
  out["name"] = std::move(name);
  for (auto& [k, v] : j.items()) out[k] = v;
  return out;
}

std::string tag_of(const Integrator& i) { return i.method == Method::quadrature ? "quad" : "mc"; }

int cmd_norm(const Options& o) {
  EntireFn f = parse_fn(o.f, o.n);
  double p = parse_p(o.p);
  ojson results = ojson::array();
  if (std::isinf(p)) {
    SupResult s = norm_inf(f, o.alpha);
    results.push_back({{"name", "norm_inf"}, {"value", json_number(s.value)}, {"stderr", 0.0},
                       {"method", s.method}, {"finite", s.finite}, {"growth_ratio", json_number(s.growth_ratio)}});
  } else {
    for (const auto& integ : integrators(o))
      results.push_back(named("norm_p:" + tag_of(integ), estimate_json(norm_p(f, {o.alpha, p, f.dim()}, integ))));
  }
  emit_result(o, "norm", std::move(results));
  return 0;
}

int cmd_supnorm(const Options& o) {
  EntireFn f = parse_fn(o.f, o.n);
  SupResult s = norm_inf(f, o.alpha);
  ojson r{{"name", "norm_inf"},     {"value", json_number(s.value)}, {"stderr", 0.0},
          {"method", s.method},     {"finite", s.finite},            {"growth_ratio", json_number(s.growth_ratio)},
          {"argmax", s.argmax.str()}, {"r_max", s.r_max},            {"rays", s.rays}};
  emit_result(o, "supnorm", ojson::array({r}));
  return 0;
}

int cmd_distance(const Options& o) {
  CPoint z = parse_point(o.z, o.n), w = parse_point(o.w, o.n);
  DistanceParams dp = o.beta ? DistanceParams{o.alpha, *o.beta, 1.0} : DistanceParams::d_alpha(o.alpha);
  double p = parse_p(o.p);
  if (std::isinf(p)) throw UsageError("distance: --p must be finite");
  dp.p_exponent = p;
  ojson results = ojson::array();
  for (const auto& integ : integrators(o))
    results.push_back(named("distance:" + tag_of(integ), estimate_json(distance_p(dp, z, w, integ))));
  emit_result(o, "distance", std::move(results));
  return 0;
}

int cmd_energy(const Options& o) {
  CPoint z = parse_point(o.z, o.n);
  ojson results = ojson::array();
  for (const auto& integ : integrators(o)) {
    if (o.k > 0)
      results.push_back(named("coord_energy:" + tag_of(integ), estimate_json(coord_energy(o.alpha, z, o.k, integ))));
    else
      results.push_back(named("E:" + tag_of(integ), estimate_json(energy_E(o.alpha, z, integ))));
  }
  double r = z.norm(), g = std::exp(0.5 * o.alpha * r * r);
  results.push_back({{"name", "lower"}, {"value", r * g}, {"stderr", 0.0}, {"method", "closed-form"}});
  results.push_back({{"name", "upper"}, {"value", std::sqrt(2.0 * z.dim() / o.alpha + r * r) * g}, {"stderr", 0.0},
                     {"method", "closed-form"}});
  emit_result(o, "energy", std::move(results));
  return 0;
}

int cmd_project(const Options& o) {
  EntireFn f = parse_fn(o.f, o.n);
  CPoint z = parse_point(o.z, f.dim());
  ojson results = ojson::array();
  for (const auto& integ : integrators(o)) {
    ComplexEstimate e = project([&](const CPoint& u) { return f(u); }, o.alpha, z, integ);
    results.push_back({{"name", "P f(z):" + tag_of(integ)}, {"value", format_complex(e.value)},
                       {"stderr", json_number(e.std_error)}, {"method", e.method}});
  }
  results.push_back({{"name", "f(z)"}, {"value", format_complex(f(z))}, {"stderr", 0.0}, {"method", "exact"}});
  emit_result(o, "project", std::move(results));
  return 0;
}

int cmd_gamma(const Options& o) {
  if (o.n < 1) throw UsageError("gamma: --n must be a positive integer");
  if (!(o.x > 0.0)) throw UsageError("gamma: --x must be positive");
  ojson r{{"name", "Gamma(n,x)"}, {"value", incomplete_gamma(o.n, o.x)}, {"stderr", 0.0}, {"method", "recurrence"},
          {"n", o.n}, {"x", o.x}};
  emit_result(o, "gamma", ojson::array({r}));
  return 0;
}

int cmd_family(const Options& o) {
  TestFamily fam = TestFamily::standard(o.alpha, o.n, o.seed);
  ojson results = ojson::array();
  for (const auto& m : fam.members()) {
    results.push_back({{"name", m.name},
                       {"value", print_fn(m.f)},
                       {"in_F_p", m.in_finite_p},
                       {"in_F_inf", m.in_infinity},
                       {"note", m.note}});
  }
  emit_result(o, "family", std::move(results));
  return 0;
}

int cmd_list(const Options& o) {
  ojson results = ojson::array();
  for (const auto& id : suite_ids()) results.push_back({{"name", id}, {"value", suite_description(id)}, {"kind", "suite"}});
  for (const auto& id : explorer_ids())
    results.push_back({{"name", id}, {"value", suite_description(id)}, {"kind", "explorer"}});
  Options q = o;
  q.timestamp = false;
  emit_result(q, "list", std::move(results));
  return 0;
}

int cmd_suite(const Options& o, bool explorer) {
  SuiteOptions so;
  so.alpha = o.alpha;
  so.beta = o.beta;
  so.n = o.n;
  so.seed = o.seed;
  so.integrator = o.integrator;
  so.order = o.order;
  so.samples = o.samples;
  so.count = o.count;
  so.f = o.f;
  so.N = o.N;
  so.c = o.c;
  if (!o.p.empty()) so.p = parse_p(o.p);
  if (!so.f.empty()) parse_fn(so.f, so.n);  // surface DSL errors before any work
  SuiteReport rep = explorer ? run_explorer(o.id, so) : run_suite(o.id, so);
  std::optional<std::string> ts;
  if (o.timestamp) ts = utc_now();
  emit(o, o.format == "csv" ? rep.to_csv() : rep.to_json(ts).dump(2) + "\n");
  if (!o.tables.empty()) {
    fs::create_directories(o.tables);
    for (const auto& t : rep.tables) {
      std::string file = rep.suite + "_" + t.name + ".csv";
      for (char& ch : file)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '.' && ch != '_' && ch != '-') ch = '_';
      write_atomic(fs::path(o.tables) / file, rep.table_csv(t));
    }
  }
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"focklab: Fock-space norms, distances and verification suites"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file");
  Options o;
  std::string p_flag;
  app.add_option("--f", o.f, "entire function in the focklab DSL");
  app.add_option("--p", p_flag, "exponent p (a positive number or 'inf')");
  app.add_option("--alpha", o.alpha, "Gaussian parameter alpha")->check(CLI::PositiveNumber);
  app.add_option("--beta", o.beta, "kernel parameter beta; with it, alpha is the measure parameter");
  app.add_option("--n", o.n, "dimension (1 or 2), or the order of Gamma(n,x)")->check(CLI::PositiveNumber);
  app.add_option("--z", o.z, "point z, e.g. '1+0.5i, 2'");
  app.add_option("--w", o.w, "point w");
  app.add_option("--x", o.x, "argument of Gamma(n,x)");
  app.add_option("--k", o.k, "coordinate index (1-based) for energy");
  app.add_option("--integrator", o.integrator, "quad, mc or both")->check(CLI::IsMember({"quad", "mc", "both"}));
  app.add_option("--order", o.order, "quadrature order (0 = default)")->check(CLI::NonNegativeNumber);
  app.add_option("--samples", o.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "seed (FOCKLAB_SEED overrides)");
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", o.out, "output file (written atomically; default stdout)");
  app.add_option("--tables", o.tables, "directory for table CSV files");
  app.add_option("--count", o.count, "number of pairs / triples / points (0 = suite default)");
  app.add_option("--N", o.N, "derivative order");
  app.add_option("--c", o.c, "constant c");
  app.add_flag("!--no-timestamp", o.timestamp, "omit the timestamp field");

  auto* norm = app.add_subcommand("norm", "||f||_{p,alpha}");
  auto* sup = app.add_subcommand("supnorm", "||f||_{inf,alpha} by sup search");
  auto* dist = app.add_subcommand("distance", "d_alpha(z,w) or d_{alpha,beta}(z,w); --p selects distance_p");
  auto* energy = app.add_subcommand("energy", "E(z), or the coordinate energy with --k");
  auto* proj = app.add_subcommand("project", "P_alpha f(z)");
  auto* gamma = app.add_subcommand("gamma", "upper incomplete gamma Gamma(n,x)");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", o.id, "suite id")->required();
  auto* explore = app.add_subcommand("explore", "run a conjecture explorer (evidence only)");
  explore->add_option("conjecture", o.id, "conjecture id")->required();
  auto* family = app.add_subcommand("family", "list the test family");
  auto* list = app.add_subcommand("list", "list suite and explorer ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (const char* env = std::getenv("FOCKLAB_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      o.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      std::cerr << "error: FOCKLAB_SEED must be an unsigned integer\n";
      return 2;
    }
  }

  const bool is_suite = verify->parsed() || explore->parsed();
  if (!p_flag.empty()) o.p = p_flag;
  else if (is_suite) o.p.clear();
  else if (dist->parsed()) o.p = "1";

  try {
    if (norm->parsed() || sup->parsed() || proj->parsed()) {
      if (o.f.empty()) throw UsageError("--f is required");
    }
    if (dist->parsed() && (o.z.empty() || o.w.empty())) throw UsageError("--z and --w are required");
    if ((energy->parsed() || proj->parsed()) && o.z.empty()) throw UsageError("--z is required");
    if (norm->parsed()) return cmd_norm(o);
    if (sup->parsed()) return cmd_supnorm(o);
    if (dist->parsed()) return cmd_distance(o);
    if (energy->parsed()) return cmd_energy(o);
    if (proj->parsed()) return cmd_project(o);
    if (gamma->parsed()) return cmd_gamma(o);
    if (family->parsed()) return cmd_family(o);
    if (list->parsed()) return cmd_list(o);
    return cmd_suite(o, explore->parsed());
  } catch (const ParseError& e) {
    std::cerr << "error: malformed input at " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
