#include "focklab/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "focklab/log_complex.hpp"
#include "focklab/parallel.hpp"
#include "focklab/rng.hpp"

namespace focklab {

IntegrationError::IntegrationError(const std::string& what, CPoint where)
    : std::runtime_error(what + " at " + where.str()), where_(std::move(where)) {}

namespace {

constexpr std::size_t kNodesPerChunk = 8192;

double real_value(const Integrand& g, const CPoint& u, double log_weight) {
  if (g.log_domain) {
    double lg = g.fn(u);
    if (std::isnan(lg) || lg == std::numeric_limits<double>::infinity()) {
      throw IntegrationError("non-finite integrand (log form)", u);
    }
    return std::exp(lg + log_weight);
  }
  double v = g.fn(u);
  if (!std::isfinite(v)) throw IntegrationError("non-finite integrand", u);
  return log_weight == 0.0 ? v : v * std::exp(log_weight);
}

cplx complex_value(const ComplexIntegrand& g, const CPoint& u, double log_weight) {
  cplx v = g(u);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw IntegrationError("non-finite integrand", u);
  return log_weight == 0.0 ? v : v * std::exp(log_weight);
}

template <typename T, typename Eval>
T quad_sum(const QuadratureRule& rule, Eval&& eval) {
  const std::size_t total = rule.size();
  const std::size_t chunks = (total + kNodesPerChunk - 1) / kNodesPerChunk;
  std::vector<T> partial(chunks, T{});
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<cplx> buf;
    T s{};
    const std::size_t end = std::min(total, (c + 1) * kNodesPerChunk);
    for (std::size_t i = c * kNodesPerChunk; i < end; ++i) {
      double w = rule.node_into(i, buf);
      s += w * eval(CPoint(buf));
    }
    partial[c] = s;
  });
  return pairwise_reduce(std::move(partial), T{}, [](const T& a, const T& b) { return a + b; });
}

}  // namespace

Estimate quad_integrate(const Integrand& g, const QuadratureRule& rule, bool richardson) {
  auto eval = [&](const CPoint& u) { return real_value(g, u, 0.0); };
  Estimate e;
  e.value = quad_sum<double>(rule, eval);
  e.method = to_string(rule.kind());
  e.count = static_cast<std::size_t>(rule.order());
  if (richardson && rule.order() / 2 >= 4) {
    e.error_proxy = std::abs(e.value - quad_sum<double>(rule.with_order(rule.order() / 2), eval));
  }
  return e;
}

ComplexEstimate quad_integrate_complex(const ComplexIntegrand& g, const QuadratureRule& rule, bool richardson) {
  auto eval = [&](const CPoint& u) { return complex_value(g, u, 0.0); };
  ComplexEstimate e;
  e.value = quad_sum<cplx>(rule, eval);
  e.method = to_string(rule.kind());
  e.count = static_cast<std::size_t>(rule.order());
  if (richardson && rule.order() / 2 >= 4) {
    e.error_proxy = std::abs(e.value - quad_sum<cplx>(rule.with_order(rule.order() / 2), eval));
  }
  return e;
}

void MCConfig::validate(int n) const {
  if (samples < 1) throw std::invalid_argument("MCConfig: samples must be >= 1");
  for (const auto& c : centers) require_same_dim(n, c.dim(), "MCConfig center");
  if (!mixture_weights.empty()) {
    if (mixture_weights.size() != centers.size())
      throw std::invalid_argument("MCConfig: mixture weights and centers differ in length");
    double s = 0.0;
    for (double w : mixture_weights) {
      if (!(w >= 0.0)) throw std::invalid_argument("MCConfig: negative mixture weight");
      s += w;
    }
    if (std::abs(s - 1.0) > 1e-12) throw std::invalid_argument("MCConfig: mixture weights must sum to 1");
  }
}

namespace {

// Welford accumulator combined with Chan's parallel update.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    count += 1.0;
    double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }
  static Moments merge(const Moments& a, const Moments& b) {
    if (a.count == 0.0) return b;
    if (b.count == 0.0) return a;
    Moments r;
    r.count = a.count + b.count;
    double d = b.mean - a.mean;
    r.mean = a.mean + d * b.count / r.count;
    r.m2 = a.m2 + b.m2 + d * d * a.count * b.count / r.count;
    return r;
  }
};

struct Proposal {
  double alpha;
  int n;
  std::vector<CPoint> centers;
  std::vector<double> cumulative;
  std::vector<double> log_weights;

  Proposal(const GaussianMeasure& m, const MCConfig& cfg) : alpha(m.alpha), n(m.n), centers(cfg.centers) {
    std::vector<double> w = cfg.mixture_weights;
    if (w.empty() && !centers.empty()) w.assign(centers.size(), 1.0 / static_cast<double>(centers.size()));
    double acc = 0.0;
    for (double x : w) {
      acc += x;
      cumulative.push_back(acc);
      log_weights.push_back(std::log(x));
    }
  }

  // draws u and returns log(d lambda / d q)(u)
  double draw(PhiloxStream& s, std::vector<cplx>& u) const {
    const double sd = 1.0 / std::sqrt(2.0 * alpha);
    std::size_t j = 0;
    if (centers.size() > 1) {
      double r = s.uniform() * cumulative.back();
      j = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin());
      j = std::min(j, centers.size() - 1);
    }
    u.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      auto z = s.normal_pair();
      u[static_cast<std::size_t>(k)] = cplx{sd * z[0], sd * z[1]};
      if (!centers.empty()) u[static_cast<std::size_t>(k)] += centers[j][k];
    }
    if (centers.empty()) return 0.0;
    CPoint up(u);
    std::vector<double> terms(centers.size());
    for (std::size_t i = 0; i < centers.size(); ++i) {
      terms[i] = log_weights[i] + 2.0 * alpha * up.dot_conj(centers[i]).real() - alpha * centers[i].norm2();
    }
    double lw = -log_sum_exp(terms);
    if (!std::isfinite(lw)) throw IntegrationError("degenerate proposal weight", up);
    return lw;
  }
};

}  // namespace

Estimate mc_integrate(const Integrand& g, const GaussianMeasure& measure, const MCConfig& cfg) {
  cfg.validate(measure.n);
  Proposal prop(measure, cfg);
  const std::size_t chunks = (cfg.samples + kSamplesPerChunk - 1) / kSamplesPerChunk;
  std::vector<Moments> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    PhiloxStream stream(cfg.seed, c);
    std::vector<cplx> u;
    Moments m;
    const std::size_t end = std::min(cfg.samples, (c + 1) * kSamplesPerChunk);
    for (std::size_t i = c * kSamplesPerChunk; i < end; ++i) {
      double lw = prop.draw(stream, u);
      m.push(real_value(g, CPoint(u), lw));
    }
    partial[c] = m;
  });
  Moments total = pairwise_reduce(std::move(partial), Moments{}, Moments::merge);
  Estimate e;
  e.value = total.mean;
  e.std_error = total.count > 1 ? std::sqrt(total.m2 / (total.count - 1.0) / total.count) : 0.0;
  e.method = "mc";
  e.count = cfg.samples;
  return e;
}

ComplexEstimate mc_integrate_complex(const ComplexIntegrand& g, const GaussianMeasure& measure,
                                     const MCConfig& cfg) {
  cfg.validate(measure.n);
  Proposal prop(measure, cfg);
  const std::size_t chunks = (cfg.samples + kSamplesPerChunk - 1) / kSamplesPerChunk;
  std::vector<std::pair<Moments, Moments>> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    PhiloxStream stream(cfg.seed, c);
    std::vector<cplx> u;
    Moments re, im;
    const std::size_t end = std::min(cfg.samples, (c + 1) * kSamplesPerChunk);
    for (std::size_t i = c * kSamplesPerChunk; i < end; ++i) {
      double lw = prop.draw(stream, u);
      cplx v = complex_value(g, CPoint(u), lw);
      re.push(v.real());
      im.push(v.imag());
    }
    partial[c] = {re, im};
  });
  auto total = pairwise_reduce(std::move(partial), std::pair<Moments, Moments>{},
                               [](const auto& a, const auto& b) {
                                 return std::pair{Moments::merge(a.first, b.first), Moments::merge(a.second, b.second)};
                               });
  ComplexEstimate e;
  e.value = {total.first.mean, total.second.mean};
  double n = total.first.count;
  e.std_error = n > 1 ? std::sqrt((total.first.m2 + total.second.m2) / (n - 1.0) / n) : 0.0;
  e.method = "mc";
  e.count = cfg.samples;
  return e;
}

CPoint importance_center(double beta, double alpha_meas, const CPoint& z) {
  if (!(alpha_meas > 0.0)) throw std::invalid_argument("importance_center: alpha_meas must be positive");
  return cplx{beta / (2.0 * alpha_meas)} * z;
}

Integrator Integrator::quadrature(RuleKind rule, int order) {
  Integrator i;
  i.method = Method::quadrature;
  i.rule = rule;
  i.order = order;
  return i;
}

Integrator Integrator::monte_carlo(std::size_t samples, std::uint64_t seed) {
  Integrator i;
  i.method = Method::monte_carlo;
  i.samples = samples;
  i.seed = seed;
  return i;
}

Integrator Integrator::with_seed(std::uint64_t s) const {
  Integrator i = *this;
  i.seed = s;
  return i;
}

std::string Integrator::describe() const {
  if (method == Method::monte_carlo) return "mc(samples=" + std::to_string(samples) + ", seed=" + std::to_string(seed) + ")";
  return to_string(rule) + "(order=" + (order > 0 ? std::to_string(order) : std::string("default")) + ")";
}

namespace {

MCConfig mixture_for(const Integrator& integ, int n, std::span<const CPoint> centers) {
  MCConfig cfg;
  cfg.samples = integ.samples;
  cfg.seed = integ.seed;
  bool has_origin = false;
  for (const auto& c : centers) {
    require_same_dim(n, c.dim(), "importance center");
    if (std::find(cfg.centers.begin(), cfg.centers.end(), c) != cfg.centers.end()) continue;
    if (c.norm2() == 0.0) has_origin = true;
    cfg.centers.push_back(c);
  }
  if (!cfg.centers.empty() && integ.defensive && !has_origin) cfg.centers.push_back(CPoint::zero(n));
  if (cfg.centers.size() == 1 && cfg.centers.front().norm2() == 0.0) cfg.centers.clear();
  return cfg;
}

QuadratureRule rule_for(const Integrator& integ, const GaussianMeasure& measure, std::span<const CPoint> centers) {
  QuadratureRule rule = make_rule(measure, integ.rule, integ.order_for(measure.n));
  if (integ.shift_quadrature && centers.size() == 1) rule = rule.shifted(centers.front());
  return rule;
}

}  // namespace

Estimate integrate(const Integrator& integ, const GaussianMeasure& measure, const Integrand& g,
                   std::span<const CPoint> centers) {
  if (integ.method == Method::monte_carlo) return mc_integrate(g, measure, mixture_for(integ, measure.n, centers));
  return quad_integrate(g, rule_for(integ, measure, centers));
}

ComplexEstimate integrate_complex(const Integrator& integ, const GaussianMeasure& measure,
                                  const ComplexIntegrand& g, std::span<const CPoint> centers) {
  if (integ.method == Method::monte_carlo) {
    return mc_integrate_complex(g, measure, mixture_for(integ, measure.n, centers));
  }
  return quad_integrate_complex(g, rule_for(integ, measure, centers));
}

}  // namespace focklab
