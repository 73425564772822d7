#include "focklab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "focklab/log_complex.hpp"
#include "focklab/parallel.hpp"

namespace focklab {

namespace {

constexpr double kPi = std::numbers::pi;

// Mode of |e^{a.z}| e^{-alpha |z|^2 / 2} for every term with a linear exponent.
std::vector<CPoint> exponent_centers(const EntireFn& f, double alpha) {
  std::vector<CPoint> out;
  for (const auto& t : f.terms()) {
    if (!t.has_linear()) continue;
    std::vector<cplx> c(t.linear.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::conj(t.linear[k]) / alpha;
    CPoint p(std::move(c));
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  return out;
}

bool single_exponent_group(const EntireFn& f) { return f.terms().size() == 1 && !f.has_quadratic(); }

// Unitary map sending z - w to |z - w| e_1 (n <= 2); coordinates beyond 2 are left alone.
std::pair<CPoint, CPoint> align_difference(const CPoint& z, const CPoint& w) {
  CPoint d = z - w;
  double len = d.norm();
  if (len == 0.0 || z.dim() > 2) return {z, w};
  if (z.dim() == 1) {
    cplx ph = std::conj(d[0]) / len;
    return {ph * z, ph * w};
  }
  cplx e1 = d[0] / len, e2 = d[1] / len;
  auto apply = [&](const CPoint& v) {
    return CPoint{std::conj(e1) * v[0] + std::conj(e2) * v[1], -e2 * v[0] + e1 * v[1]};
  };
  return {apply(z), apply(w)};
}

Estimate root_estimate(Estimate e, double p) {
  if (p == 1.0) return e;
  double v = e.value;
  double r = std::pow(v, 1.0 / p);
  double slope = v > 0.0 ? r / (p * v) : 0.0;
  e.value = r;
  e.std_error *= slope;
  e.error_proxy *= slope;
  return e;
}

Integrator unshifted(Integrator integ) {
  integ.shift_quadrature = false;
  return integ;
}

// ---- Nelder-Mead maximization on R^d ----

std::pair<std::vector<double>, double> nelder_mead_max(const std::function<double(const std::vector<double>&)>& fn,
                                                       std::vector<double> x0, double step, int max_iter) {
  const std::size_t d = x0.size();
  std::vector<std::vector<double>> simplex(d + 1, x0);
  std::vector<double> val(d + 1);
  for (std::size_t i = 0; i < d; ++i) simplex[i + 1][i] += step;
  auto safe = [&](const std::vector<double>& x) {
    double v = fn(x);
    return std::isnan(v) ? -kInf : v;
  };
  for (std::size_t i = 0; i <= d; ++i) val[i] = safe(simplex[i]);

  std::vector<std::size_t> idx(d + 1);
  for (int it = 0; it < max_iter; ++it) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return val[a] > val[b]; });
    const std::size_t best = idx.front(), worst = idx.back(), second = idx[d - 1];
    double size = 0.0;
    for (std::size_t i = 0; i <= d; ++i)
      for (std::size_t k = 0; k < d; ++k) size = std::max(size, std::abs(simplex[i][k] - simplex[best][k]));
    if (size < 1e-12 || (std::isfinite(val[best]) && val[best] - val[worst] < 1e-15)) break;

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < d; ++k) centroid[k] += simplex[i][k] / static_cast<double>(d);
    }
    auto along = [&](double t) {
      std::vector<double> x(d);
      for (std::size_t k = 0; k < d; ++k) x[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      return x;
    };
    auto xr = along(-1.0);
    double fr = safe(xr);
    if (fr > val[best]) {
      auto xe = along(-2.0);
      double fe = safe(xe);
      if (fe > fr) {
        simplex[worst] = xe, val[worst] = fe;
      } else {
        simplex[worst] = xr, val[worst] = fr;
      }
    } else if (fr > val[second]) {
      simplex[worst] = xr, val[worst] = fr;
    } else {
      auto xc = fr > val[worst] ? along(-0.5) : along(0.5);
      double fc = safe(xc);
      if (fc > std::max(fr, val[worst])) {
        simplex[worst] = xc, val[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= d; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < d; ++k) simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
          val[i] = safe(simplex[i]);
        }
      }
    }
  }
  std::size_t best = static_cast<std::size_t>(std::max_element(val.begin(), val.end()) - val.begin());
  return {simplex[best], val[best]};
}

std::vector<double> to_real(const CPoint& z) {
  std::vector<double> x;
  for (const auto& c : z.coords()) {
    x.push_back(c.real());
    x.push_back(c.imag());
  }
  return x;
}

CPoint from_real(const std::vector<double>& x) {
  std::vector<cplx> c(x.size() / 2);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = {x[2 * k], x[2 * k + 1]};
  return CPoint(std::move(c));
}

std::vector<CPoint> search_directions(int n, const SearchConfig& cfg) {
  std::vector<CPoint> dirs;
  if (n == 1) {
    int m = cfg.angles > 0 ? cfg.angles : 128;
    for (int j = 0; j < m; ++j) dirs.push_back(CPoint{std::polar(1.0, 2.0 * kPi * j / m)});
    return dirs;
  }
  int m = cfg.angles > 0 ? cfg.angles : 16;
  int levels = std::max(cfg.hopf_levels, 2);
  for (int a = 0; a < levels; ++a) {
    double eta = 0.5 * kPi * a / (levels - 1);
    double c = a == levels - 1 ? 0.0 : std::cos(eta);
    double s = a == 0 ? 0.0 : std::sin(eta);
    int m1 = c == 0.0 ? 1 : m;
    int m2 = s == 0.0 ? 1 : m;
    for (int j1 = 0; j1 < m1; ++j1)
      for (int j2 = 0; j2 < m2; ++j2)
        dirs.push_back(CPoint{std::polar(c, 2.0 * kPi * j1 / m), std::polar(s, 2.0 * kPi * j2 / m)});
  }
  return dirs;
}

struct RayResult {
  double best_log = -kInf;
  double best_r = 0.0;
  double end_log = -kInf;
  double half_log = -kInf;
};

}  // namespace

void FockParams::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
}

void DistanceParams::validate() const {
  if (!(alpha_meas > 0.0)) throw std::invalid_argument("alpha_meas must be positive");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (!(p_exponent > 0.0) || !std::isfinite(p_exponent)) throw std::invalid_argument("p_exponent must lie in (0, inf)");
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::finite: return "finite";
    case Membership::divergent: return "divergent";
    case Membership::inconclusive: return "inconclusive";
  }
  return "?";
}

// ---------------------------------------------------------------------------------------------
// sup search

SupResult sup_search(const std::function<double(const CPoint&)>& log_fn, int n, const SearchConfig& cfg,
                     std::span<const CPoint> hints, double scale_alpha) {
  if (n < 1 || n > 2) throw std::invalid_argument("sup_search supports n = 1 or 2");
  if (cfg.radial_points < 4) throw std::invalid_argument("sup_search needs at least 4 radial points");
  double r_max = cfg.r_max;
  if (r_max <= 0.0) {
    r_max = 12.0 / std::sqrt(scale_alpha);
    for (const auto& h : hints) r_max = std::max(r_max, 2.0 * h.norm() + 8.0 / std::sqrt(scale_alpha));
  }
  const int K = cfg.radial_points;
  const auto dirs = search_directions(n, cfg);
  const double dr = r_max / K;

  std::vector<RayResult> rays(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t j) {
    const CPoint& dir = dirs[j];
    auto at = [&](double r) {
      double v = log_fn(cplx{r} * dir);
      return std::isnan(v) ? -kInf : v;
    };
    RayResult rr;
    int best_i = 0;
    for (int i = 0; i <= K; ++i) {
      double v = at(dr * i);
      if (v > rr.best_log) rr.best_log = v, best_i = i;
      if (i == K) rr.end_log = v;
      if (i == K / 2) rr.half_log = v;
    }
    rr.best_r = dr * best_i;
    // golden-section refinement on the bracketing cells
    double a = dr * std::max(best_i - 1, 0), b = dr * std::min(best_i + 1, K);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = at(c), fd = at(d);
    for (int it = 0; it < cfg.golden_iterations; ++it) {
      if (fc > fd) {
        b = d, d = c, fd = fc;
        c = b - g * (b - a), fc = at(c);
      } else {
        a = c, c = d, fc = fd;
        d = a + g * (b - a), fd = at(d);
      }
    }
    if (fc > rr.best_log) rr.best_log = fc, rr.best_r = c;
    if (fd > rr.best_log) rr.best_log = fd, rr.best_r = d;
    rays[j] = rr;
  });

  SupResult res;
  res.r_max = r_max;
  res.rays = dirs.size();
  res.radial_points = K;
  double best = -kInf, end_max = -kInf, half_max = -kInf;
  CPoint arg = CPoint::zero(n);
  for (std::size_t j = 0; j < rays.size(); ++j) {
    if (rays[j].best_log > best) best = rays[j].best_log, arg = cplx{rays[j].best_r} * dirs[j];
    end_max = std::max(end_max, rays[j].end_log);
    half_max = std::max(half_max, rays[j].half_log);
  }
  for (const auto& h : hints) {
    double v = log_fn(h);
    if (v > best) best = v, arg = h;
  }
  res.growth_ratio = (end_max == -kInf) ? 0.0 : std::exp(end_max - half_max);
  if (end_max > -kInf && end_max - half_max > std::log(1.5)) {
    res.finite = false;
    res.value = kInf;
    res.argmax = arg;
    return res;
  }
  if (cfg.polish && best > -kInf) {
    auto obj = [&](const std::vector<double>& x) {
      CPoint p = from_real(x);
      return p.norm() > r_max ? -kInf : log_fn(p);
    };
    auto [x, v] = nelder_mead_max(obj, to_real(arg), std::max(dr, 1e-3), 4000);
    if (v > best) best = v, arg = from_real(x);
    res.method = "grid+golden+nelder-mead";
  }
  res.value = std::exp(best);
  res.argmax = arg;
  return res;
}

SupResult norm_inf(const EntireFn& f, double alpha, const SearchConfig& cfg) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  auto hints = exponent_centers(f, alpha);
  hints.push_back(CPoint::zero(f.dim()));
  return sup_search([&](const CPoint& z) { return eval_weighted(f, z, alpha).logmag; }, f.dim(), cfg, hints, alpha);
}

// ---------------------------------------------------------------------------------------------
// divergence probe

namespace {

struct LogAcc {
  double m = -kInf;
  double s = 0.0;
  void add(double x) {
    if (x == -kInf) return;
    if (x <= m) {
      s += std::exp(x - m);
    } else {
      s = s * std::exp(m - x) + 1.0;
      m = x;
    }
  }
  void merge(const LogAcc& o) {
    if (o.m == -kInf) return;
    add_scaled(o.m, o.s);
  }
  void add_scaled(double lm, double ls) {
    if (lm <= m) {
      s += ls * std::exp(lm - m);
    } else {
      s = s * std::exp(m - lm) + ls;
      m = lm;
    }
  }
  double value() const { return m == -kInf ? -kInf : m + std::log(s); }
};

}  // namespace

ProbeResult probe_integral(const std::function<double(const CPoint&)>& log_density, int n,
                           std::span<const double> radii) {
  if (n < 1 || n > 2) throw std::invalid_argument("divergence probe supports n = 1 or 2");
  if (radii.size() < 3) throw std::invalid_argument("divergence probe needs at least 3 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && radii[i] <= radii[i - 1]))
      throw std::invalid_argument("divergence probe radii must be positive and increasing");
  }
  const double r_last = radii.back();
  const int radial_order = n == 1 ? 12 : 6;
  const int panels_total = n == 1 ? 64 : 24;
  const GaussRule1D& gl_r = gauss_legendre_1d(radial_order);
  const GaussRule1D& gl_eta = gauss_legendre_1d(8);
  const int m_theta = n == 1 ? 512 : 16;

  // radial nodes per shell
  struct RNode {
    std::size_t shell;
    double r, w;
  };
  std::vector<RNode> rnodes;
  double lo = 0.0;
  for (std::size_t s = 0; s < radii.size(); ++s) {
    double hi = radii[s];
    int panels = std::max(8, static_cast<int>(std::ceil(panels_total * (hi - lo) / r_last)));
    double h = (hi - lo) / panels;
    for (int pnl = 0; pnl < panels; ++pnl) {
      double a = lo + h * pnl;
      for (int i = 0; i < radial_order; ++i) {
        rnodes.push_back({s, a + 0.5 * h * (gl_r.nodes[static_cast<std::size_t>(i)] + 1.0),
                          0.5 * h * gl_r.weights[static_cast<std::size_t>(i)]});
      }
    }
    lo = hi;
  }

  std::vector<LogAcc> per_node(rnodes.size());
  parallel_for(rnodes.size(), [&](std::size_t i) {
    const auto& rn = rnodes[i];
    LogAcc acc;
    const double dth = 2.0 * kPi / m_theta;
    if (n == 1) {
      const double lw = std::log(rn.w * rn.r * dth);
      for (int j = 0; j < m_theta; ++j) {
        acc.add(lw + log_density(CPoint{std::polar(rn.r, dth * (j + 0.5))}));
      }
    } else {
      // z = r (cos eta e^{i phi1}, sin eta e^{i phi2}), dv = r^3 cos eta sin eta dr deta dphi1 dphi2
      for (std::size_t e = 0; e < gl_eta.nodes.size(); ++e) {
        double eta = 0.25 * kPi * (gl_eta.nodes[e] + 1.0);
        double we = 0.25 * kPi * gl_eta.weights[e];
        double lw = std::log(rn.w * rn.r * rn.r * rn.r * std::cos(eta) * std::sin(eta) * we * dth * dth);
        for (int j1 = 0; j1 < m_theta; ++j1)
          for (int j2 = 0; j2 < m_theta; ++j2)
            acc.add(lw + log_density(CPoint{std::polar(rn.r * std::cos(eta), dth * (j1 + 0.5)),
                                            std::polar(rn.r * std::sin(eta), dth * (j2 + 0.5))}));
      }
    }
    per_node[i] = acc;
  });

  ProbeResult res;
  res.radii.assign(radii.begin(), radii.end());
  LogAcc cumulative;
  std::size_t k = 0;
  for (std::size_t s = 0; s < radii.size(); ++s) {
    for (; k < rnodes.size() && rnodes[k].shell == s; ++k) cumulative.merge(per_node[k]);
    res.log_integrals.push_back(cumulative.value());
  }
  double last = res.log_integrals.back(), prev = res.log_integrals[res.log_integrals.size() - 2];
  if (last == -kInf) {
    res.growth = 1.0;
    res.relative_increment = 0.0;
    res.verdict = Membership::finite;
    return res;
  }
  if (std::isinf(last) || std::isnan(last)) {
    res.growth = kInf;
    res.relative_increment = 1.0;
    res.verdict = Membership::divergent;
    return res;
  }
  res.growth = std::exp(last - prev);
  res.relative_increment = -std::expm1(prev - last);
  if (last - prev > std::log(1.5)) {
    res.verdict = Membership::divergent;
  } else if (res.relative_increment < 1e-3) {
    res.verdict = Membership::finite;
  } else {
    res.verdict = Membership::inconclusive;
  }
  return res;
}

std::vector<double> default_probe_radii(const EntireFn& f, double p, double alpha) {
  double base = 0.0;
  for (const auto& c : exponent_centers(f, alpha)) base = std::max(base, c.norm());
  const double unit = 1.0 / std::sqrt(p * alpha);
  return {base + 4.0 * unit, base + 8.0 * unit, base + 16.0 * unit, base + 32.0 * unit};
}

ProbeResult divergence_probe(const EntireFn& f, double p, double alpha, std::span<const double> radii) {
  FockParams{alpha, p, f.dim()}.validate();
  std::vector<double> r = radii.empty() ? default_probe_radii(f, p, alpha) : std::vector<double>(radii.begin(), radii.end());
  const double log_pref = f.dim() * std::log(p * alpha / (2.0 * kPi));
  return probe_integral(
      [&](const CPoint& z) { return p * eval_weighted(f, z, alpha).logmag + log_pref; }, f.dim(), r);
}

// ---------------------------------------------------------------------------------------------
// norms

Estimate weighted_p_norm(const std::function<double(const CPoint&)>& log_g, int n, double p, double alpha,
                         const Integrator& integ, std::span<const CPoint> centers) {
  FockParams{alpha, p, n}.validate();
  GaussianMeasure measure(p * alpha / 2.0, n);
  Integrator use = integ;
  // one center: translate the rule onto the peak of the integrand
  if (centers.size() == 1) use.shift_quadrature = true;
  Estimate e = integrate(use, measure, Integrand::log([&](const CPoint& u) { return p * log_g(u); }), centers);
  return root_estimate(e, p);
}

Estimate norm_p(const EntireFn& f, const FockParams& params, const Integrator& integ) {
  params.validate();
  if (params.is_infinite()) throw std::invalid_argument("norm_p: use norm_inf for p = inf");
  require_same_dim(params.n, f.dim(), "norm_p");
  if (f.is_zero()) return Estimate{0.0, 0.0, "exact", 0, 0.0, true};
  if (f.has_quadratic()) {
    ProbeResult probe = divergence_probe(f, params.p, params.alpha);
    if (probe.verdict == Membership::divergent) {
      Estimate e;
      e.value = kInf;
      e.method = "divergence-probe";
      e.finite = false;
      return e;
    }
  }
  std::vector<CPoint> centers = exponent_centers(f, params.alpha);
  if (!single_exponent_group(f) && integ.method == Method::quadrature) centers.clear();
  return weighted_p_norm([&](const CPoint& u) { return f.eval_log(u).logmag; }, params.n, params.p, params.alpha,
                         integ, centers);
}

// ---------------------------------------------------------------------------------------------
// distances

namespace {

Estimate distance_impl(const DistanceParams& dp, const CPoint& z, const CPoint& w, const Integrator& integ, double p) {
  dp.validate();
  require_same_dim(z.dim(), w.dim(), "distance");
  if (z == w) return Estimate{0.0, 0.0, "exact", 0, 0.0, true};
  // a fixed argument order makes d(z, w) and d(w, z) bitwise equal
  if (std::lexicographical_compare(w.coords().begin(), w.coords().end(), z.coords().begin(), z.coords().end(),
                                   [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); }))
    return distance_impl(dp, w, z, integ, p);
  auto [zr, wr] = align_difference(z, w);
  const double beta = dp.beta;
  // After the rotation z - w = |z - w| e_1, so for n = 2 the u_2 factor is a pure exponential
  // whose integral is closed-form; only the u_1 integral is computed.
  double log_factor = 0.0;
  CPoint w1 = wr, d = zr - wr;
  if (z.dim() == 2) {
    log_factor = p * p * beta * beta * std::norm(wr[1]) / (4.0 * dp.alpha_meas);
    w1 = CPoint{wr[0]};
    d = CPoint{cplx{(z - w).norm()}};
  }
  GaussianMeasure measure(dp.alpha_meas, w1.dim());
  std::vector<CPoint> centers{importance_center(beta, dp.alpha_meas, w1 + d), importance_center(beta, dp.alpha_meas, w1)};
  Integrand g = Integrand::log([&, w1 = w1, d = d](const CPoint& u) {
    return p * (beta * w1.dot_conj(u).real() + log_abs_expm1(beta * d.dot_conj(u)));
  });
  Integrator use = unshifted(integ);
  if (use.method == Method::quadrature && use.order == 0 && z.dim() == 2) use.order = default_order(1);
  Estimate e = integrate(use, measure, g, centers);
  const double f = std::exp(log_factor);
  e.value *= f;
  e.std_error *= f;
  e.error_proxy *= f;
  return p > 1.0 ? root_estimate(e, p) : e;
}

}  // namespace

Estimate distance(const DistanceParams& dp, const CPoint& z, const CPoint& w, const Integrator& integ) {
  return distance_impl(dp, z, w, integ, 1.0);
}

Estimate distance_p(const DistanceParams& dp, const CPoint& z, const CPoint& w, const Integrator& integ) {
  return distance_impl(dp, z, w, integ, dp.p_exponent);
}

double kernel_modulus_integral(double alpha_meas, double beta, const CPoint& z) {
  return std::exp(beta * beta * z.norm2() / (4.0 * alpha_meas));
}

Estimate kernel_modulus_integral_numeric(double alpha_meas, double beta, const CPoint& z, const Integrator& integ) {
  GaussianMeasure measure(alpha_meas, z.dim());
  std::vector<CPoint> centers{importance_center(beta, alpha_meas, z)};
  return integrate(integ, measure, Integrand::log([&](const CPoint& u) { return beta * z.dot_conj(u).real(); }),
                   centers);
}

// ---------------------------------------------------------------------------------------------
// energies

Estimate energy_E(double alpha, const CPoint& z, const Integrator& integ) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  GaussianMeasure measure(alpha / 2.0, z.dim());
  std::vector<CPoint> centers{importance_center(alpha, alpha / 2.0, z)};
  return integrate(unshifted(integ), measure, Integrand::log([&](const CPoint& u) {
                     return 0.5 * std::log(u.norm2()) + alpha * z.dot_conj(u).real();
                   }),
                   centers);
}

Estimate coord_energy(double alpha, const CPoint& z, int k, const Integrator& integ) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (k < 1 || k > z.dim()) throw std::out_of_range("coord_energy: k must lie in [1, n]");
  GaussianMeasure measure(alpha / 2.0, z.dim());
  std::vector<CPoint> centers{importance_center(alpha, alpha / 2.0, z)};
  return integrate(unshifted(integ), measure, Integrand::log([&](const CPoint& u) {
                     return std::log(std::abs(u[k - 1])) + alpha * z.dot_conj(u).real();
                   }),
                   centers);
}

double second_moment_identity(double alpha, const CPoint& z) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  double r2 = z.norm2();
  return (2.0 / alpha) * (z.dim() + 0.5 * alpha * r2) * std::exp(0.5 * alpha * r2);
}

Estimate second_moment_direct(double alpha, const CPoint& z, const Integrator& integ) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  GaussianMeasure measure(alpha / 2.0, z.dim());
  std::vector<CPoint> centers{importance_center(alpha, alpha / 2.0, z)};
  return integrate(integ, measure, Integrand::log([&](const CPoint& u) {
                     return std::log(u.norm2()) + alpha * z.dot_conj(u).real();
                   }),
                   centers);
}

// ---------------------------------------------------------------------------------------------
// projection

ComplexEstimate project(const ComplexIntegrand& g, double alpha, const CPoint& z, const Integrator& integ) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  GaussianMeasure measure(alpha, z.dim());
  std::vector<CPoint> centers{importance_center(alpha, alpha, z)};
  return integrate_complex(unshifted(integ), measure,
                           [&](const CPoint& u) { return std::exp(alpha * z.dot_conj(u)) * g(u); }, centers);
}

// ---------------------------------------------------------------------------------------------

double incomplete_gamma(int n, double x) {
  if (n < 1) throw std::invalid_argument("incomplete_gamma: n must be >= 1");
  if (!(x > 0.0)) throw std::invalid_argument("incomplete_gamma: x must be positive");
  double g = std::exp(-x);
  const double lx = std::log(x);
  for (int k = 2; k <= n; ++k) g = (k - 1) * g + std::exp((k - 1) * lx - x);
  return g;
}

double incomplete_gamma_scaled(int n, double x) {
  if (n < 1) throw std::invalid_argument("incomplete_gamma_scaled: n must be >= 1");
  if (!(x >= 0.0)) throw std::invalid_argument("incomplete_gamma_scaled: x must be non-negative");
  double g = 1.0, xp = 1.0;
  for (int k = 2; k <= n; ++k) {
    xp *= x;
    g = (k - 1) * g + xp;
  }
  return g;
}

double monomial_sup_norm(const MultiIndex& m, double alpha) {
  double lg = 0.0;
  for (int k = 0; k < m.dim(); ++k) {
    int mk = m[k];
    if (mk > 0) lg += 0.5 * mk * (std::log(mk / alpha) - 1.0);
  }
  return std::exp(lg);
}

DualDistance lemma3_dual_distance(double alpha, const CPoint& z, const CPoint& w, int family_size,
                                  const Integrator& integ) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (family_size < 1) throw std::invalid_argument("family_size must be >= 1");
  require_same_dim(z.dim(), w.dim(), "lemma3_dual_distance");
  const int n = z.dim();
  DualDistance res;
  if (z == w) {
    res.upper = res.upper_direct = Estimate{0.0, 0.0, "exact", 0, 0.0, true};
    res.lower_witness = "any";
    return res;
  }

  auto consider = [&](double v, const std::string& name) {
    if (v > res.lower) res.lower = v, res.lower_witness = name;
  };
  // normalized kernels k_v, v on the line through z and w
  for (int j = 0; j < family_size; ++j) {
    double t = family_size == 1 ? 0.0 : -0.5 + 2.0 * j / (family_size - 1);
    CPoint v = z + cplx{t} * (w - z);
    EntireFn k = EntireFn::normalized_kernel(alpha, v);
    consider(std::abs(k(z) - k(w)), "k_v v=" + v.str());
  }
  for (const CPoint& v : {z, w}) {
    EntireFn k = EntireFn::normalized_kernel(alpha, v);
    consider(std::abs(k(z) - k(w)), "k_v v=" + v.str());
  }
  // normalized monomials
  for (int order = 1; order <= 6; ++order) {
    for (const auto& m : multi_indices_of_order(n, order)) {
      double s = monomial_sup_norm(m, alpha);
      consider(std::abs(m.monomial(z) - m.monomial(w)) / s, "z^m normalized");
    }
  }

  Estimate d = distance(DistanceParams::d_alpha(alpha), z, w, integ);
  const double scale = std::ldexp(1.0, n);
  res.upper = d;
  res.upper.value *= scale;
  res.upper.std_error *= scale;
  res.upper.error_proxy *= scale;

  auto [zr, wr] = align_difference(z, w);
  // same reduction as for the distance: the u_2 factor integrates to 2 e^{alpha |w_2|^2 / 2}
  double factor = 1.0;
  CPoint w1 = wr, diff = zr - wr;
  if (n == 2) {
    factor = 2.0 * std::exp(0.5 * alpha * std::norm(wr[1]));
    w1 = CPoint{wr[0]};
    diff = CPoint{cplx{(z - w).norm()}};
  }
  GaussianMeasure measure(alpha, 1);
  std::vector<CPoint> centers{importance_center(alpha, alpha / 2.0, w1 + diff), importance_center(alpha, alpha / 2.0, w1)};
  // always by quadrature: under lambda_alpha sampling this integrand has infinite variance; the
  // e^{alpha|u|^2/2} factor needs a higher order than the default
  Integrator quad = integ.method == Method::quadrature ? unshifted(integ) : Integrator::quadrature();
  quad.order = std::max(quad.order_for(1), 128);
  res.upper_direct = integrate(quad, measure, Integrand::log([&, w1 = w1, diff = diff](const CPoint& u) {
                                 return 0.5 * alpha * u.norm2() + alpha * w1.dot_conj(u).real() +
                                        log_abs_expm1(alpha * diff.dot_conj(u));
                               }),
                               centers);
  res.upper_direct.value *= factor;
  res.upper_direct.error_proxy *= factor;
  return res;
}

}  // namespace focklab
