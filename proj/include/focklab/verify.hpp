#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "focklab/analysis.hpp"
#include "focklab/family.hpp"
#include "focklab/report.hpp"

namespace focklab {

// Everything a suite run depends on; embedded verbatim in the report.
struct SuiteOptions {
  double alpha = 1.0;
  std::optional<double> beta;  // set: d_{alpha,beta} with alpha as the measure parameter; unset: d_alpha
  int n = 1;
  std::optional<double> p;
  std::uint64_t seed = 0;
  std::string integrator = "quad";  // quad | mc | both
  int order = 0;                    // 0 = rule default
  std::size_t samples = 100000;
  int count = 0;                    // triples / pairs / points; 0 = suite default
  std::string f;                    // DSL function; empty = the standard family
  std::optional<int> N;
  std::optional<double> c;

  DistanceParams distance_params() const;
  std::vector<Integrator> integrators() const;
  ojson to_json() const;
};

// Independent per-check seed: splitmix64 of (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// uncertainty attached to an estimate in hard checks: the MC standard error
inline double sigma(const Estimate& e) { return e.std_error; }

// Tolerance for hard bounds: max(1e-4 |value|, 4 sigma).
inline double hard_tolerance(double value, double s) { return std::max(1e-4 * std::abs(value), 4.0 * s); }

// ---- suites ----

SuiteReport check_kernel_integral(const SuiteOptions& opt);
SuiteReport check_metric_axioms(const DistanceParams& dp, int n, int triples, std::uint64_t seed,
                                const Integrator& integ);
SuiteReport check_prop2(const DistanceParams& dp, int n, const std::vector<double>& radii, std::uint64_t seed,
                        const Integrator& integ);
SuiteReport check_lemma3(double alpha, int n, int pairs, std::uint64_t seed, const Integrator& integ);
SuiteReport check_lemma4(double alpha, const std::vector<CPoint>& points, const Integrator& integ);
SuiteReport check_lemma5(double alpha, int n, const std::vector<double>& radii, std::uint64_t seed,
                         const Integrator& integ);
SuiteReport check_eq3(double alpha, int n, int points, std::uint64_t seed, const Integrator& integ);
SuiteReport check_coord_energy(double alpha, int n, std::uint64_t seed, const Integrator& integ);
SuiteReport check_unitary(const DistanceParams& dp, int unitaries, std::uint64_t seed, const Integrator& integ);
SuiteReport check_thm6(const std::vector<FamilyMember>& members, double alpha, int pairs, std::uint64_t seed,
                       const Integrator& integ);
SuiteReport check_thm7(const std::vector<FamilyMember>& members, double alpha);
// f in F^p vs f^(N)/(1+|z|)^N in L^p: both directions for n = 1, the forward direction over all
// |m| = N partials for n = 2.
SuiteReport check_hl(const std::vector<FamilyMember>& members, const std::vector<double>& p_list, double alpha,
                     const std::vector<int>& N_list, const Integrator& integ, const std::string& suite_id = "hl");
SuiteReport check_cor10(const std::vector<FamilyMember>& members, const std::vector<double>& c_list,
                        const std::vector<double>& p_list, double alpha, int taylor_degree, const Integrator& integ);
SuiteReport check_cor12_p1(const std::vector<FamilyMember>& members, double alpha, const Integrator& integ);
SuiteReport check_reproduce(double alpha, int max_degree, std::uint64_t seed, const Integrator& integ);
SuiteReport check_norms(double alpha, int n, int kernels, std::uint64_t seed, const Integrator& integ);
SuiteReport check_gamma();

SuiteReport explore_conjecture13(const std::vector<FamilyMember>& members, const std::vector<double>& p_list,
                                 double alpha, const std::vector<int>& N_list, const Integrator& integ);
SuiteReport explore_conjecture14(const std::vector<FamilyMember>& members, double p, double alpha, int pairs,
                                 std::uint64_t seed, const Integrator& integ);

// ---- registry ----

const std::vector<std::string>& suite_ids();
const std::vector<std::string>& explorer_ids();
std::string suite_description(const std::string& id);

// Runs a suite (or explorer) by id with the config embedded. Throws std::invalid_argument for an
// unknown id.
SuiteReport run_suite(const std::string& id, const SuiteOptions& opt);
SuiteReport run_explorer(const std::string& id, const SuiteOptions& opt);

// Membership verdict of an EntireFn-derived weighted quantity: log_g is log|g| without the
// Gaussian factor, and the question is whether g e^{-alpha|z|^2/2} lies in L^p.
struct MembershipResult {
  Membership verdict = Membership::inconclusive;
  double value = 0.0;  // the p-norm (or sup) when finite
  double stderr_value = 0.0;
  double growth = 0.0;
  std::string method;
};

MembershipResult weighted_membership(const std::function<double(const CPoint&)>& log_g, int n, double p,
                                     double alpha, std::vector<double> radii, const Integrator& integ,
                                     std::span<const CPoint> centers = {});

}  // namespace focklab
