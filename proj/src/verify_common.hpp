#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "focklab/dsl.hpp"
#include "focklab/log_complex.hpp"
#include "focklab/rng.hpp"
#include "focklab/verify.hpp"

namespace focklab::detail {

inline CPoint random_unit(PhiloxStream& rng, int n) {
  std::vector<cplx> c(static_cast<std::size_t>(n));
  double s = 0.0;
  for (auto& x : c) {
    auto g = rng.normal_pair();
    x = {g[0], g[1]};
    s += std::norm(x);
  }
  s = std::sqrt(s);
  for (auto& x : c) x /= s;
  return CPoint(std::move(c));
}

// uniform in the ball of the given radius
inline CPoint random_point(PhiloxStream& rng, int n, double radius) {
  double r = radius * std::pow(rng.uniform(), 1.0 / (2.0 * n));
  return cplx{r} * random_unit(rng, n);
}

// Half the pairs with |z - w| <= 0.1, half with |z - w| in [1, 4]; z in the ball of radius `radius`.
inline std::vector<std::pair<CPoint, CPoint>> sample_pairs(std::uint64_t seed, int n, int count, double radius) {
  PhiloxStream rng(seed, 0x7061);
  std::vector<std::pair<CPoint, CPoint>> out;
  for (int i = 0; i < count; ++i) {
    CPoint z = random_point(rng, n, radius);
    double len = i < count / 2 ? 0.1 * rng.uniform() : 1.0 + 3.0 * rng.uniform();
    CPoint w = z + cplx{len} * random_unit(rng, n);
    out.emplace_back(std::move(z), std::move(w));
  }
  return out;
}

inline Integrator indexed(const Integrator& integ, std::uint64_t index) {
  return integ.with_seed(derive_seed(integ.seed, index));
}

inline double membership_code(Membership m) {
  return m == Membership::finite ? 1.0 : m == Membership::divergent ? 0.0 : 0.5;
}

inline Membership known_membership(const FamilyMember& m, double p) {
  return m.member_of(p) ? Membership::finite : Membership::divergent;
}

inline std::string p_label(double p) { return std::isinf(p) ? std::string("inf") : format_double(p); }

// log of sqrt(sum_k exp(2 l_k))
inline double log_hypot(std::span<const double> logs) {
  std::vector<double> twice(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) twice[i] = 2.0 * logs[i];
  return 0.5 * log_sum_exp(twice);
}

// Exponent centers of every linear term, used as sup-search hints and MC centers.
inline std::vector<CPoint> centers_of(const EntireFn& f, double alpha) {
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

}  // namespace focklab::detail
