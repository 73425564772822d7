#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "focklab/quadrature.hpp"

namespace focklab {

// value + uncertainty + provenance; the return type of every numeric functional.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for quadrature
  std::string method;      // "quad-gh", "quad-polar", "mc", "closed-form", ...
  std::size_t count = 0;   // quadrature order or sample count
  double error_proxy = 0.0;  // |value(order) - value(order/2)| for quadrature
  bool finite = true;        // false when a divergence probe flagged the quantity
};

struct ComplexEstimate {
  cplx value = 0.0;
  double std_error = 0.0;
  std::string method;
  std::size_t count = 0;
  double error_proxy = 0.0;
};

// Real integrand on C^n. In log form `fn` returns log g (g >= 0; -inf encodes 0), which lets
// importance weights and large exponential factors combine before exponentiation.
struct Integrand {
  std::function<double(const CPoint&)> fn;
  bool log_domain = false;

  static Integrand plain(std::function<double(const CPoint&)> f) { return {std::move(f), false}; }
  static Integrand log(std::function<double(const CPoint&)> f) { return {std::move(f), true}; }
};

using ComplexIntegrand = std::function<cplx(const CPoint&)>;

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, CPoint where);
  const CPoint& where() const { return where_; }

 private:
  CPoint where_;
};

// Deterministic weighted sum over the rule. error_proxy compares against order/2 when
// `richardson` is set and order/2 >= 4.
Estimate quad_integrate(const Integrand& g, const QuadratureRule& rule, bool richardson = true);
ComplexEstimate quad_integrate_complex(const ComplexIntegrand& g, const QuadratureRule& rule,
                                       bool richardson = true);

struct MCConfig {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  // Mixture proposal: lambda_alpha translated to each center. Empty = sample lambda_alpha.
  std::vector<CPoint> centers;
  std::vector<double> mixture_weights;  // empty = equal weights

  void validate(int n) const;
};

inline constexpr std::size_t kSamplesPerChunk = std::size_t{1} << 16;

// Unbiased importance-sampled estimate of the integral of g against the measure. Chunk c of
// 2^16 samples draws from Philox stream (seed, c); chunk sums are combined by a fixed
// pairwise tree, so results do not depend on the worker count.
Estimate mc_integrate(const Integrand& g, const GaussianMeasure& measure, const MCConfig& cfg);
ComplexEstimate mc_integrate_complex(const ComplexIntegrand& g, const GaussianMeasure& measure,
                                     const MCConfig& cfg);

// Mode of exp(beta Re(z.conj(u))) exp(-alpha_meas |u|^2): (beta / (2 alpha_meas)) z.
CPoint importance_center(double beta, double alpha_meas, const CPoint& z);

enum class Method { quadrature, monte_carlo };

// Either a quadrature rule family or a seeded Monte Carlo configuration.
struct Integrator {
  Method method = Method::quadrature;
  RuleKind rule = RuleKind::polar;
  int order = 0;  // 0 = default_order(n)
  // translate the quadrature rule to the single importance center, when one is supplied
  bool shift_quadrature = false;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  // MC mixtures also get a component at the origin, which keeps importance weights bounded
  bool defensive = true;

  static Integrator quadrature(RuleKind rule = RuleKind::polar, int order = 0);
  static Integrator monte_carlo(std::size_t samples, std::uint64_t seed);

  Integrator with_seed(std::uint64_t s) const;
  int order_for(int n) const { return order > 0 ? order : default_order(n); }
  std::string describe() const;
};

// Importance centers steer MC proposals (and a shifted quadrature rule when enabled).
Estimate integrate(const Integrator& integ, const GaussianMeasure& measure, const Integrand& g,
                   std::span<const CPoint> centers = {});
ComplexEstimate integrate_complex(const Integrator& integ, const GaussianMeasure& measure,
                                  const ComplexIntegrand& g, std::span<const CPoint> centers = {});

}  // namespace focklab
