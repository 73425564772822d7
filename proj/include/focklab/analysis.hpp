#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "focklab/entire_fn.hpp"
#include "focklab/integrate.hpp"

namespace focklab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// p = infinity is stored as +inf and routed to norm_inf.
struct FockParams {
  double alpha = 1.0;
  double p = 2.0;
  int n = 1;

  bool is_infinite() const { return p == kInf; }
  void validate() const;
};

// d_{alpha,beta}(z,w) = int |e^{beta z.conj(u)} - e^{beta w.conj(u)}|^p d lambda_{alpha_meas}(u),
// with a 1/p-th root applied when p > 1.
struct DistanceParams {
  double alpha_meas = 0.5;
  double beta = 1.0;
  double p_exponent = 1.0;

  // d_alpha = d_{alpha/2, alpha}
  static DistanceParams d_alpha(double alpha, double p = 1.0) { return {alpha / 2.0, alpha, p}; }
  void validate() const;
};

// ---- sup search ----

struct SearchConfig {
  int angles = 0;          // rays per angular coordinate; 0 = 128 for n = 1, 16 for n = 2
  int hopf_levels = 9;     // latitude levels for n = 2
  int radial_points = 160;
  double r_max = 0.0;      // 0 = chosen from alpha and the function's centers
  int golden_iterations = 48;
  bool polish = true;      // Nelder-Mead from the best grid point
};

struct SupResult {
  double value = 0.0;      // best value found; +inf when unbounded growth is detected
  CPoint argmax;
  bool finite = true;
  double growth_ratio = 0.0;  // M(r_max) / M(r_max / 2) over all rays
  double r_max = 0.0;
  std::size_t rays = 0;
  int radial_points = 0;
  std::string method = "grid+golden";
};

// Maximizes exp(log_fn(z)) over the ball of radius r_max. `hints` are extra start points.
SupResult sup_search(const std::function<double(const CPoint&)>& log_fn, int n, const SearchConfig& cfg,
                     std::span<const CPoint> hints = {}, double scale_alpha = 1.0);

// ||f||_{inf,alpha} = sup |f(z)| e^{-alpha |z|^2 / 2}, reported as a lower bound.
SupResult norm_inf(const EntireFn& f, double alpha, const SearchConfig& cfg = {});

// ---- divergence detection ----

enum class Membership { finite, divergent, inconclusive };
std::string to_string(Membership m);

struct ProbeResult {
  Membership verdict = Membership::inconclusive;
  std::vector<double> radii;
  std::vector<double> log_integrals;  // log of the truncated integral at each radius
  double growth = 0.0;                // I(last) / I(previous)
  double relative_increment = 0.0;    // (I(last) - I(previous)) / I(last)
};

// Truncated-ball integrals of exp(log_density) against dv on C^n (n <= 2), classified by the
// last step: growth > 1.5 is divergent, relative increment < 1e-3 is finite.
ProbeResult probe_integral(const std::function<double(const CPoint&)>& log_density, int n,
                           std::span<const double> radii);

// Radii 4, 8, 16, 32 in units of 1/sqrt(p alpha), offset by the farthest exponential center.
std::vector<double> default_probe_radii(const EntireFn& f, double p, double alpha);

// Probe for the integrand |f|^p e^{-p alpha |z|^2 / 2} (p alpha / 2 pi)^n.
ProbeResult divergence_probe(const EntireFn& f, double p, double alpha, std::span<const double> radii = {});

// ---- norms ----

// ||f||_{p,alpha} for finite p; a detected divergence returns value +inf with finite = false.
Estimate norm_p(const EntireFn& f, const FockParams& params, const Integrator& integ = {});

// (int exp(p * log_g) d lambda_{p alpha / 2})^{1/p}: the p-norm of any weighted quantity whose
// log-modulus is log_g (without the Gaussian factor).
Estimate weighted_p_norm(const std::function<double(const CPoint&)>& log_g, int n, double p, double alpha,
                         const Integrator& integ, std::span<const CPoint> centers = {});

// ---- distances ----

Estimate distance(const DistanceParams& dp, const CPoint& z, const CPoint& w, const Integrator& integ = {});
Estimate distance_p(const DistanceParams& dp, const CPoint& z, const CPoint& w, const Integrator& integ = {});

// e^{beta^2 |z|^2 / (4 alpha)}: integral of |e^{beta z.conj(u)}| against lambda_alpha.
double kernel_modulus_integral(double alpha_meas, double beta, const CPoint& z);
// Numerical version of the same integral.
Estimate kernel_modulus_integral_numeric(double alpha_meas, double beta, const CPoint& z, const Integrator& integ);

// ---- energies ----

// E(z) = int |u| |e^{alpha z.conj(u)}| d lambda_{alpha/2}(u)
Estimate energy_E(double alpha, const CPoint& z, const Integrator& integ = {});
// int |u_k e^{alpha z.conj(u)}| d lambda_{alpha/2}(u); k is 1-based
Estimate coord_energy(double alpha, const CPoint& z, int k, const Integrator& integ = {});
// (2/alpha)(n + alpha |z|^2 / 2) e^{alpha |z|^2 / 2} = int |u|^2 |e^{alpha z.conj(u)}| d lambda_{alpha/2}
double second_moment_identity(double alpha, const CPoint& z);
Estimate second_moment_direct(double alpha, const CPoint& z, const Integrator& integ = {});

// ---- projection ----

// P_alpha g(z) = int e^{alpha z.conj(u)} g(u) d lambda_alpha(u)
ComplexEstimate project(const ComplexIntegrand& g, double alpha, const CPoint& z, const Integrator& integ = {});

// ---- special functions ----

// Gamma(n, x) = int_x^inf s^{n-1} e^{-s} ds by the upward recurrence.
double incomplete_gamma(int n, double x);
// e^x Gamma(n, x), the same recurrence without the underflowing factor; defined at x = 0.
double incomplete_gamma_scaled(int n, double x);

// ---- dual distance ----

struct DualDistance {
  double lower = 0.0;             // best |f(z) - f(w)| over the probe family
  std::string lower_witness;
  Estimate upper;                 // 2^n d_alpha(z, w)
  Estimate upper_direct;          // int |K_z - K_w| e^{alpha |u|^2 / 2} d lambda_alpha
};

DualDistance lemma3_dual_distance(double alpha, const CPoint& z, const CPoint& w, int family_size,
                                  const Integrator& integ = {});

// sup |z^m| e^{-alpha |z|^2 / 2} = prod_k (m_k / alpha)^{m_k / 2} e^{-m_k / 2}
double monomial_sup_norm(const MultiIndex& m, double alpha);

}  // namespace focklab
