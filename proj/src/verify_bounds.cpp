#include <algorithm>
#include <cmath>
#include <numbers>

#include "focklab/calculus.hpp"
#include "focklab/dsl.hpp"
#include "focklab/quadrature.hpp"
#include "verify_common.hpp"

namespace focklab {

using namespace detail;

namespace {
constexpr double kPi = std::numbers::pi;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

MembershipResult weighted_membership(const std::function<double(const CPoint&)>& log_g, int n, double p,
                                     double alpha, std::vector<double> radii, const Integrator& integ,
                                     std::span<const CPoint> centers) {
  MembershipResult res;
  if (std::isinf(p)) {
    std::vector<CPoint> hints(centers.begin(), centers.end());
    hints.push_back(CPoint::zero(n));
    SupResult s = sup_search([&](const CPoint& z) { return log_g(z) - 0.5 * alpha * z.norm2(); }, n, SearchConfig{},
                             hints, alpha);
    res.verdict = s.finite ? Membership::finite : Membership::divergent;
    res.value = s.value;
    res.growth = s.growth_ratio;
    res.method = s.method;
    return res;
  }
  if (radii.empty()) {
    double base = 0.0;
    for (const auto& c : centers) base = std::max(base, c.norm());
    const double unit = 1.0 / std::sqrt(p * alpha);
    radii = {base + 4.0 * unit, base + 8.0 * unit, base + 16.0 * unit, base + 32.0 * unit};
  }
  const double log_pref = n * std::log(p * alpha / (2.0 * kPi));
  ProbeResult probe = probe_integral(
      [&](const CPoint& z) { return p * log_g(z) - 0.5 * p * alpha * z.norm2() + log_pref; }, n, radii);
  res.verdict = probe.verdict;
  res.growth = probe.growth;
  if (probe.verdict == Membership::divergent) {
    res.value = kInf;
    res.method = "divergence-probe";
    return res;
  }
  std::vector<CPoint> c(centers.begin(), centers.end());
  if (c.size() > 1 && integ.method == Method::quadrature) c.clear();
  Estimate e = weighted_p_norm(log_g, n, p, alpha, integ, c);
  res.value = e.value;
  res.stderr_value = e.std_error;
  res.method = e.method;
  return res;
}

// ---------------------------------------------------------------------------------------------

SuiteReport check_kernel_integral(const SuiteOptions& opt) {
  SuiteReport rep("kernel", opt.seed);
  Integrator quad = Integrator::quadrature(RuleKind::polar, opt.order);
  Integrator mc = Integrator::monte_carlo(opt.samples, opt.seed);
  PhiloxStream rng(opt.seed, 0x6b65);
  std::uint64_t idx = 0;
  std::vector<double> ratios;
  for (int n : {1, 2}) {
    for (double a : {0.5, 1.0, 2.0}) {
      for (double b : {0.5, 1.0, 2.0}) {
        for (double r : {0.0, 0.5, 1.0, 2.0}) {
          CPoint z = cplx{r} * random_unit(rng, n);
          double exact = kernel_modulus_integral(a, b, z);
          std::string tag = "n=" + std::to_string(n) + " alpha=" + format_double(a) + " beta=" + format_double(b) +
                            " |z|=" + format_double(r);
          Estimate q = kernel_modulus_integral_numeric(a, b, z, quad);
          rep.check_close("quad " + tag, q.value, exact, 0.0, 1e-6 * exact, q.method);
          Estimate m = kernel_modulus_integral_numeric(a, b, z, indexed(mc, idx++));
          rep.check_close("mc " + tag, m.value, exact, m.std_error, 4.0 * m.std_error, m.method);
          ratios.push_back(m.std_error > 0 ? (m.value - exact) / m.std_error : 0.0);
        }
      }
    }
  }
  rep.add_envelope("mc z-score (value - exact) / stderr", ratios);
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------------------------

SuiteReport check_metric_axioms(const DistanceParams& dp, int n, int triples, std::uint64_t seed,
                                const Integrator& integ) {
  if (triples < 10) throw std::invalid_argument("metric: at least 10 triples required");
  SuiteReport rep("metric", seed);
  PhiloxStream rng(seed, 0x6d65);
  std::vector<std::array<CPoint, 3>> pts;
  for (int i = 0; i < triples; ++i) pts.push_back({random_point(rng, n, 2.0), random_point(rng, n, 2.0), random_point(rng, n, 2.0)});

  struct Variant {
    std::string name;
    double p;
  };
  std::uint64_t idx = 0;
  for (const Variant& v : {Variant{"d", 1.0}, Variant{"d_p2 (root)", 2.0}, Variant{"d_p0.5 (no root)", 0.5}}) {
    DistanceParams d = dp;
    d.p_exponent = v.p;
    auto dist = [&](const CPoint& a, const CPoint& b) { return distance_p(d, a, b, indexed(integ, idx++)); };
    double max_self = 0.0, max_asym = 0.0, min_pos = kInf;
    int violations = 0;
    double worst = -kInf;
    std::vector<double> slack;
    for (const auto& t : pts) {
      const CPoint &x = t[0], &y = t[1], &z = t[2];
      max_self = std::max(max_self, std::abs(dist(x, x).value));
      Estimate dxy = dist(x, y), dyx = dist(y, x), dyz = dist(y, z), dxz = dist(x, z);
      if (integ.method == Method::quadrature) max_asym = std::max(max_asym, std::abs(dxy.value - dyx.value));
      min_pos = std::min({min_pos, dxy.value, dyz.value, dxz.value});
      double s = std::sqrt(dxy.std_error * dxy.std_error + dyz.std_error * dyz.std_error + dxz.std_error * dxz.std_error);
      double tol = std::max(3.0 * s, 1e-9 * (dxy.value + dyz.value));
      double gap = dxz.value - dxy.value - dyz.value;
      slack.push_back(-gap);
      if (gap > tol) ++violations;
      worst = std::max(worst, gap - tol);
    }
    rep.check_close(v.name + " identity max d(z,z)", max_self, 0.0, 0.0, 0.0, "exact");
    if (integ.method == Method::quadrature)
      rep.check_close(v.name + " symmetry max |d(z,w)-d(w,z)|", max_asym, 0.0, 0.0, 0.0, integ.describe());
    rep.check_le(v.name + " positivity (-min d)", -min_pos, 0.0, 0.0, 0.0, integ.describe()).pass = min_pos > 0.0;
    rep.check_le(v.name + " triangle violations", violations, 0.0, 0.0, 0.0, integ.describe());
    rep.check_le(v.name + " triangle worst excess over 3 sigma", worst, 0.0, 0.0, 0.0, integ.describe());
    rep.add_envelope(v.name + " triangle slack d(x,y)+d(y,z)-d(x,z)", slack);
  }
  rep.config["alpha_meas"] = dp.alpha_meas;
  rep.config["beta"] = dp.beta;
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------------------------

SuiteReport check_prop2(const DistanceParams& dp, int n, const std::vector<double>& radii, std::uint64_t seed,
                        const Integrator& integ) {
  if (radii.empty()) throw std::invalid_argument("prop2: radii must be nonempty");
  SuiteReport rep("prop2", seed);
  PhiloxStream rng(seed, 0x7032);
  const double a = dp.alpha_meas, b = dp.beta;
  std::vector<double> ratios;
  Table& tab = rep.add_table("sandwich", {"radius", "d", "stderr", "lower", "upper", "asymptotic"});
  std::uint64_t idx = 0;
  for (double r : radii) {
    CPoint z = cplx{r} * random_unit(rng, n);
    Estimate d = distance(dp, z, CPoint::zero(n), indexed(integ, idx++));
    double c = std::exp(b * b * r * r / (4.0 * a));
    double tol = hard_tolerance(d.value, sigma(d));
    std::string tag = " |z|=" + format_double(r);
    rep.check_le("lower e^{b^2|z|^2/4a}-1 <= d" + tag, c - 1.0, d.value, d.std_error, tol, d.method);
    rep.check_le("upper d <= e^{b^2|z|^2/4a}+1" + tag, d.value, c + 1.0, d.std_error, tol, d.method);
    double asym = std::sqrt(std::expm1(b * b * r * r / (2.0 * a)));
    ratios.push_back(d.value / asym);
    tab.rows.push_back({r, d.value, d.std_error, c - 1.0, c + 1.0, asym});
  }
  double rmax = *std::max_element(radii.begin(), radii.end());
  {
    CPoint z = cplx{rmax} * random_unit(rng, n);
    Estimate d = distance(dp, z, CPoint::zero(n), indexed(integ, idx++));
    double c = std::exp(b * b * rmax * rmax / (4.0 * a));
    double tol = hard_tolerance(d.value, sigma(d)) / c;
    rep.check_close("d/e^{b^2|z|^2/4a} within e^{-b^2|z|^2/4a} of 1, |z|=" + format_double(rmax), d.value / c, 1.0,
                    d.std_error / c, 1.0 / c + tol, d.method);
  }
  {
    const double h = 1e-3;
    CPoint z = cplx{h} * random_unit(rng, n);
    Estimate d = distance(dp, z, CPoint::zero(n), indexed(integ, idx++));
    double slope = b * 0.5 * std::sqrt(kPi / a);
    double tol = std::max(1e-3 * slope, 4.0 * sigma(d) / h);
    rep.check_close("small-|z| slope d/|z| vs beta/2 sqrt(pi/alpha), |z|=1e-3", d.value / h, slope, d.std_error / h,
                    tol, d.method);
  }
  rep.add_envelope("d(z,0) / sqrt(e^{b^2|z|^2/2a} - 1)", ratios);
  rep.config["alpha_meas"] = a;
  rep.config["beta"] = b;
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------------------------

SuiteReport check_lemma3(double alpha, int n, int pairs, std::uint64_t seed, const Integrator& integ) {
  SuiteReport rep("lemma3", seed);
  auto ps = sample_pairs(seed, n, pairs, 1.5);
  std::vector<double> ratios;
  std::uint64_t idx = 0;
  int i = 0;
  for (const auto& [z, w] : ps) {
    DualDistance dd = lemma3_dual_distance(alpha, z, w, 16, indexed(integ, idx++));
    std::string tag = " pair " + std::to_string(i++);
    double tol = hard_tolerance(dd.upper.value, dd.upper.std_error);
    rep.check_le("lower <= 2^n d_alpha" + tag, dd.lower, dd.upper.value, dd.upper.std_error, tol, dd.upper.method);
    rep.check_close("2^n d_alpha == int |K_z-K_w| e^{alpha|u|^2/2} d lambda_alpha" + tag, dd.upper.value,
                    dd.upper_direct.value, dd.upper.std_error, tol, dd.upper_direct.method);
    ratios.push_back(dd.lower / dd.upper.value);
  }
  rep.add_envelope("lower / upper", ratios);
  rep.note("upper bound uses the factor e^{alpha|u|^2/2} inside the integral; with e^{alpha|z|^2/2} the two sides "
           "would not agree");
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------------------------

SuiteReport check_lemma4(double alpha, const std::vector<CPoint>& points, const Integrator& integ) {
  SuiteReport rep("lemma4", integ.seed);
  Integrator use = integ;
  use.shift_quadrature = true;
  std::vector<double> resid;
  std::uint64_t idx = 0;
  for (const auto& z : points) {
    double closed = second_moment_identity(alpha, z);
    Estimate direct = second_moment_direct(alpha, z, indexed(use, idx++));
    double tol = std::max(1e-6 * closed, 4.0 * sigma(direct));
    rep.check_close("int |u|^2 |e^{alpha z.u}| d lambda_{alpha/2} at z=" + z.str(), direct.value, closed,
                    direct.std_error, tol, direct.method);
    resid.push_back(std::abs(direct.value - closed) / closed);
  }
  if (!points.empty()) {
    // the closed form at doubled |z|^2 against its own scaling law
    const CPoint& z = points.back();
    CPoint z2 = cplx{std::sqrt(2.0)} * z;
    double n = z.dim(), r2 = z.norm2();
    double expect = (n + alpha * r2) / (n + 0.5 * alpha * r2) * std::exp(0.5 * alpha * r2);
    double got = second_moment_identity(alpha, z2) / second_moment_identity(alpha, z);
    rep.check_close("closed form scaling under |z|^2 -> 2|z|^2", got, expect, 0.0, 1e-12 * expect, "closed-form");
  }
  rep.add_envelope("relative residual", resid);
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------------------------

SuiteReport check_lemma5(double alpha, int n, const std::vector<double>& radii, std::uint64_t seed,
                         const Integrator& integ) {
  SuiteReport rep("lemma5", seed);
  PhiloxStream rng(seed, 0x6c35);
  std::vector<double> ratios;
  Table& tab = rep.add_table("energy", {"radius", "E", "stderr", "lower", "upper"});
  std::uint64_t idx = 0;
  for (double r : radii) {
    CPoint z = cplx{r} * random_unit(rng, n);
    Estimate e = energy_E(alpha, z, indexed(integ, idx++));
    double g = std::exp(0.5 * alpha * r * r);
    double lo = r * g, hi = std::sqrt(2.0 * n / alpha + r * r) * g;
    double tol = hard_tolerance(e.value, sigma(e));
    std::string tag = " |z|=" + format_double(r);
    rep.check_le("|z| e^{alpha|z|^2/2} <= E" + tag, lo, e.value, e.std_error, tol, e.method);
    rep.check_le("E <= sqrt(2n/alpha+|z|^2) e^{alpha|z|^2/2}" + tag, e.value, hi, e.std_error, tol, e.method);
    ratios.push_back(e.value / ((1.0 + r) * g));
    tab.rows.push_back({r, e.value, e.std_error, lo, hi});
    if (r == 0.0) {
      double exact = std::exp(std::lgamma(n + 0.5) - std::lgamma(n)) / std::sqrt(alpha / 2.0);
      rep.check_close("E(0) = Gamma(n+1/2)/(Gamma(n) sqrt(alpha/2))", e.value, exact, e.std_error,
                      hard_tolerance(exact, sigma(e)), e.method);
    }
  }
  rep.add_envelope("E(z) / ((1+|z|) e^{alpha|z|^2/2})", ratios);
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------------------------

SuiteReport check_eq3(double alpha, int n, int points, std::uint64_t seed, const Integrator& integ) {
  SuiteReport rep("eq3", seed);
  PhiloxStream rng(seed, 0x6533);
  const double h = 1e-3;
  std::vector<double> ratios;
  std::uint64_t idx = 0;
  for (int i = 0; i < points; ++i) {
    CPoint z = random_point(rng, n, 2.0);
    CPoint w = z + cplx{h} * random_unit(rng, n);
    Estimate d = distance(DistanceParams::d_alpha(alpha), z, w, indexed(integ, idx++));
    Estimate e = energy_E(alpha, z, indexed(integ, idx++));
    double lhs = d.value / h, rhs = alpha * e.value * (1.0 + 1e-2);
    double s = std::hypot(d.std_error / h, alpha * e.std_error);
    rep.check_le("d_alpha(z,w)/|z-w| <= alpha E(z)(1+1e-2) point " + std::to_string(i), lhs, rhs, s, 4.0 * s,
                 d.method);
    ratios.push_back(lhs / (alpha * e.value));
  }
  rep.add_envelope("d_alpha(z,w) / (|z-w| alpha E(z))", ratios);
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------------------------

SuiteReport check_coord_energy(double alpha, int n, std::uint64_t seed, const Integrator& integ) {
  SuiteReport rep("coord", seed);
  PhiloxStream rng(seed, 0x636f);
  std::uint64_t idx = 0;
  {
    Estimate e = coord_energy(alpha, CPoint::zero(n), 1, indexed(integ, idx++));
    double exact = 0.5 * std::sqrt(kPi) / std::sqrt(alpha / 2.0);
    rep.check_close("z=0, k=1: int |u_1| d lambda_{alpha/2}", e.value, exact, e.std_error,
                    hard_tolerance(exact, sigma(e)), e.method);
  }
  std::vector<double> ratios;
  for (double r : {0.5, 1.0, 2.0, 3.0}) {
    CPoint z = cplx{r} * random_unit(rng, n);
    for (int k = 1; k <= n; ++k) {
      Estimate e = coord_energy(alpha, z, k, indexed(integ, idx++));
      ratios.push_back(e.value / ((1.0 + std::abs(z[k - 1])) * std::exp(0.5 * alpha * z.norm2())));
    }
  }
  rep.add_envelope("coord_energy / ((1+|z_k|) e^{alpha|z|^2/2})", ratios);
  if (n == 1) {
    CPoint z{cplx{1.2, -0.4}};
    Estimate a = coord_energy(alpha, z, 1, indexed(integ, idx++));
    Estimate b = energy_E(alpha, z, indexed(integ, idx++));
    double s = std::hypot(a.std_error, b.std_error);
    rep.check_close("n=1: coord_energy(k=1) == E(z)", a.value, b.value, s,
                    std::max(1e-10 * b.value, 4.0 * s), a.method);
  } else {
    CPoint z{3.0, 0.0};
    Estimate e1 = coord_energy(alpha, z, 1, indexed(integ, idx++));
    Estimate e2 = coord_energy(alpha, z, 2, indexed(integ, idx++));
    double g = std::exp(0.5 * alpha * z.norm2());
    double s = std::hypot(e1.std_error, e2.std_error) / g;
    rep.check_le("z=(3,0): ratio k=2 < ratio k=1 (k dependence)", e2.value / g, e1.value / g, s, -4.0 * s, e1.method);
    CPoint za{cplx{0.8, 0.3}, cplx{0.8, 0.3}};
    Estimate a1 = coord_energy(alpha, za, 1, indexed(integ, idx++));
    Estimate a2 = coord_energy(alpha, za, 2, indexed(integ, idx++));
    double sa = std::hypot(a1.std_error, a2.std_error);
    rep.check_close("z=(a,a): k=1 and k=2 agree", a1.value, a2.value, sa, std::max(1e-10 * a1.value, 4.0 * sa),
                    a1.method);
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------------------------

SuiteReport check_unitary(const DistanceParams& dp, int unitaries, std::uint64_t seed, const Integrator& integ) {
  SuiteReport rep("unitary", seed);
  PhiloxStream rng(seed, 0x756e);
  std::vector<double> rel;
  std::uint64_t idx = 0;
  for (int i = 0; i < unitaries; ++i) {
    CPoint a = random_unit(rng, 2);
    cplx ph = std::polar(1.0, 2.0 * kPi * rng.uniform());
    // U = ph [[a1, a2], [-conj(a2), conj(a1)]]
    auto U = [&](const CPoint& v) {
      return CPoint{ph * (a[0] * v[0] + a[1] * v[1]), ph * (-std::conj(a[1]) * v[0] + std::conj(a[0]) * v[1])};
    };
    CPoint z = random_point(rng, 2, 1.5), w = random_point(rng, 2, 1.5);
    Estimate d0 = distance(dp, z, w, indexed(integ, idx++));
    Estimate d1 = distance(dp, U(z), U(w), indexed(integ, idx++));
    double s = std::hypot(d0.std_error, d1.std_error);
    rep.check_close("d(Uz,Uw) == d(z,w) unitary " + std::to_string(i), d1.value, d0.value, s,
                    hard_tolerance(d0.value, s), d0.method);
    rel.push_back((d1.value - d0.value) / d0.value);
  }
  rep.add_envelope("relative difference", rel);
  rep.config["alpha_meas"] = dp.alpha_meas;
  rep.config["beta"] = dp.beta;
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------------------------

SuiteReport check_reproduce(double alpha, int max_degree, std::uint64_t seed, const Integrator& integ) {
  SuiteReport rep("reproduce", seed);
  PhiloxStream rng(seed, 0x7270);
  std::vector<CPoint> pts;
  for (double r : {0.25, 0.5, 1.0, 1.5})
    for (int j = 0; j < 3; ++j) pts.push_back(CPoint{std::polar(r, 2.0 * kPi * (j + rng.uniform()) / 3.0)});
  const bool mc = integ.method == Method::monte_carlo;
  std::uint64_t idx = 0;
  auto run = [&](const std::string& name, const std::vector<cplx>& c) {
    double worst = 0.0, worst_tol_ratio = 0.0;
    for (const auto& z : pts) {
      auto g = [&](const CPoint& u) {
        cplx s = 0.0;
        for (std::size_t j = c.size(); j-- > 0;) s = s * u[0] + c[j];
        return s;
      };
      ComplexEstimate pe = project(g, alpha, z, indexed(integ, idx++));
      cplx exact = g(z);
      double scale = 0.0;
      for (std::size_t j = 0; j < c.size(); ++j) scale += std::abs(c[j]) * std::pow(std::abs(z[0]), static_cast<double>(j));
      double err = std::abs(pe.value - exact) / scale;
      worst = std::max(worst, err);
      if (mc) worst_tol_ratio = std::max(worst_tol_ratio, std::abs(pe.value - exact) / (4.0 * pe.std_error));
    }
    if (mc) {
      rep.check_le("P f = f (within 4 sigma) " + name, worst_tol_ratio, 1.0, 0.0, 0.0, "mc");
    } else {
      rep.check_le("P f = f max relative error " + name, worst, 1e-8, 0.0, 0.0, integ.describe());
    }
  };
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<cplx> mono(static_cast<std::size_t>(d + 1), 0.0);
    mono.back() = 1.0;
    run("u^" + std::to_string(d), mono);
    std::vector<cplx> rnd(static_cast<std::size_t>(d + 1));
    for (auto& x : rnd) x = {2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
    run("random degree " + std::to_string(d), rnd);
  }
  // non-analytic symbols
  for (const auto& z : {pts[1], pts[7]}) {
    ComplexEstimate a = project([](const CPoint& u) { return std::conj(u[0]); }, alpha, z, indexed(integ, idx++));
    ComplexEstimate b = project([](const CPoint& u) { return cplx{std::norm(u[0])}; }, alpha, z, indexed(integ, idx++));
    rep.check_close("P conj(u) = 0 at z=" + z.str(), std::abs(a.value), 0.0, a.std_error,
                    std::max(1e-10, 4.0 * a.std_error), a.method);
    rep.check_close("P |u|^2 = 1/alpha at z=" + z.str(), std::abs(b.value - 1.0 / alpha), 0.0, b.std_error,
                    std::max(1e-10, 4.0 * b.std_error), b.method);
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------------------------

SuiteReport check_norms(double alpha, int n, int kernels, std::uint64_t seed, const Integrator& integ) {
  SuiteReport rep("norms", seed);
  PhiloxStream rng(seed, 0x6e6f);
  const std::vector<double> ps{0.5, 1.0, 2.0, 4.0};
  std::uint64_t idx = 0;
  auto check_unit = [&](const std::string& name, const EntireFn& f) {
    for (double p : ps) {
      Estimate e = norm_p(f, {alpha, p, n}, indexed(integ, idx++));
      rep.check_close(name + " p=" + format_double(p), e.value, 1.0, e.std_error, std::max(1e-6, 4.0 * e.std_error),
                      e.method);
    }
    SupResult s = norm_inf(f, alpha);
    rep.check_close(name + " p=inf", s.value, 1.0, 0.0, 1e-6, s.method);
  };
  check_unit("||1||", EntireFn::constant(n, 1.0));
  for (int i = 0; i < kernels; ++i) {
    CPoint w = random_point(rng, n, 2.0);
    check_unit("||k_w|| w=" + w.str(), EntireFn::normalized_kernel(alpha, w));
  }
  // monomial moments ||z^m||_{2,alpha}^2 = m! / alpha^{|m|}
  for (int order = 1; order <= 6; ++order) {
    for (const auto& m : multi_indices_of_order(n, order)) {
      if (n == 2 && m[0] != m[1] && m[0] != 0) continue;
      Estimate e = norm_p(EntireFn::monomial(m), {alpha, 2.0, n}, indexed(integ, idx++));
      double exact = std::exp(0.5 * (m.log_factorial() - order * std::log(alpha)));
      rep.check_close("||z^m||_2 m=" + std::to_string(m[0]) + (n == 2 ? "," + std::to_string(m[1]) : ""), e.value,
                      exact, e.std_error, std::max(1e-6 * exact, 4.0 * e.std_error), e.method);
    }
  }
  {
    MultiIndex m = MultiIndex::unit(n, 0);
    SupResult s = norm_inf(EntireFn::monomial(m), alpha);
    double exact = monomial_sup_norm(m, alpha);
    rep.check_close("||z_1||_inf = e^{-1/2}/sqrt(alpha)", s.value, exact, 0.0, 1e-6 * exact, s.method);
  }
  {
    EntireFn f = EntireFn::normalized_kernel(alpha, random_point(rng, n, 1.0)) + EntireFn::monomial(MultiIndex::unit(n, 0));
    cplx c{-2.0, 1.5};
    Estimate a = norm_p(f, {alpha, 1.0, n}, indexed(integ, idx));
    Estimate b = norm_p(c * f, {alpha, 1.0, n}, indexed(integ, idx++));
    double s = std::abs(c) * a.std_error + b.std_error;
    rep.check_close("homogeneity ||c f|| = |c| ||f||", b.value, std::abs(c) * a.value, s,
                    std::max(1e-9 * b.value, 4.0 * s), a.method);
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------------------------

namespace {

// int_x^inf s^{n-1} e^{-s} ds by composite Gauss-Legendre on [x, x + 80]
double incomplete_gamma_numeric(int n, double x) {
  const GaussRule1D& gl = gauss_legendre_1d(16);
  const int panels = 160;
  const double L = 80.0, h = L / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    double a = x + h * p;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      double s = a + 0.5 * h * (gl.nodes[i] + 1.0);
      sum += 0.5 * h * gl.weights[i] * std::exp((n - 1) * std::log(s) - s);
    }
  }
  return sum;
}

}  // namespace

SuiteReport check_gamma() {
  SuiteReport rep("gamma", 0);
  for (int n = 1; n <= 6; ++n) {
    double a = incomplete_gamma_scaled(n, 20.0) * std::exp(-20.0), b = incomplete_gamma(n, 20.0);
    rep.check_close("scaled recurrence n=" + std::to_string(n) + " x=20", a, b, 0.0, 1e-13 * b, "recurrence");
  }
  {
    double r = incomplete_gamma(3, 50.0) / (2500.0 * std::exp(-50.0));
    rep.check_close("Gamma(3,50)/(50^2 e^-50) = 1.0408", r, 1.0408, 0.0, 1e-4, "recurrence");
  }
  rep.check_close("Gamma(1,1) = e^-1", incomplete_gamma(1, 1.0), std::exp(-1.0), 0.0, 1e-15, "recurrence");
  rep.check_close("Gamma(2,1) = 2 e^-1", incomplete_gamma(2, 1.0), 2.0 * std::exp(-1.0), 0.0, 1e-15, "recurrence");
  for (int n = 1; n <= 6; ++n) {
    for (double x : {1.0, 5.0, 20.0}) {
      double a = incomplete_gamma(n, x), b = incomplete_gamma_numeric(n, x);
      rep.check_close("recurrence vs integral n=" + std::to_string(n) + " x=" + format_double(x), a, b, 0.0, 1e-8 * b,
                      "gauss-legendre");
    }
  }
  Table& tab = rep.add_table("asymptotic", {"n", "x", "Gamma(n,x)/(x^{n-1}e^{-x})"});
  for (int n : {1, 3, 6})
    for (double x : {1.0, 10.0, 100.0, 1000.0})
      tab.rows.push_back({static_cast<double>(n), x,
                          incomplete_gamma_scaled(n, x) / std::pow(x, n - 1)});
  {
    double r = incomplete_gamma_scaled(6, 1000.0) / std::pow(1000.0, 5);
    rep.check_close("Gamma(6,x) ~ x^5 e^-x at x=1000", r, 1.0, 0.0, 6e-3, "recurrence");
  }
  rep.finalize();
  return rep;
}

}  // namespace focklab
