#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "focklab/analysis.hpp"
#include "focklab/dsl.hpp"
#include "helpers.hpp"

using namespace focklab;
using th::rel_err;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double e = std::numbers::e;

// int_0^R f; every integrand here carries a Gaussian factor that is negligible past R = 30
double half_line(const std::function<double(double)>& f, double R = 30.0) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, R, 20, 1e-14);
}

// E(z) for n = 1 after the angular integral: alpha int_0^inf r^2 I_0(alpha r |z|) e^{-alpha r^2 / 2} dr
double energy_oracle(double alpha, double modz) {
  return alpha * half_line([&](double r) {
    return r * r * boost::math::cyl_bessel_i(0, alpha * r * modz) * std::exp(-alpha * r * r / 2);
  });
}

// int |e^{beta z conj(u)} - 1|^2 d lambda_alpha on C^1 by nested Gauss-Kronrod in angle and exp-sinh in r
double distance_sq_oracle(double alpha, double beta, double modz) {
  return half_line([&](double r) {
    auto ang = [&](double t) { return std::norm(std::exp(beta * modz * std::polar(r, -t)) - 1.0); };
    double a = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(ang, 0.0, 2 * pi, 8, 1e-13);
    return alpha / pi * r * std::exp(-alpha * r * r) * a;
  });
}

Integrator quad(int order = 0) { return Integrator::quadrature(RuleKind::polar, order); }

}  // namespace

TEST_CASE("norm_p examples") {
  for (double alpha : {0.5, 1.0, 2.0})
    for (int n : {1, 2})
      for (double p : {0.5, 1.0, 2.0, 4.0}) {
        auto v = norm_p(EntireFn::constant(n, 1.0), {alpha, p, n}, quad());
        CHECK(std::abs(v.value - 1.0) < 1e-9);
        CPoint w = n == 1 ? CPoint{cplx(0.7, -0.4)} : CPoint{cplx(0.5, 0.2), cplx(-0.3, 0.6)};
        auto k = norm_p(EntireFn::normalized_kernel(alpha, w), {alpha, p, n}, quad());
        CHECK(std::abs(k.value - 1.0) < 1e-6);
      }
  CHECK(norm_p(parse_fn("poly: z"), {1.0, 2.0, 1}, quad()).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(norm_p(parse_fn("poly: z^3"), {1.0, 2.0, 1}, quad()).value == doctest::Approx(std::sqrt(6.0)).epsilon(1e-10));
  // ||z1^2 z2||_2^2 = 2! 1! / alpha^3
  CHECK(norm_p(parse_fn("poly: z1^2*z2"), {2.0, 2.0, 2}, quad()).value == doctest::Approx(std::sqrt(2.0 / 8.0)).epsilon(1e-9));
  auto div = norm_p(EntireFn::exp_square(0.5), {1.0, 2.0, 1}, quad());
  CHECK_FALSE(div.finite);
  CHECK(std::isinf(div.value));
  CHECK_THROWS(norm_p(EntireFn::constant(1, 1.0), {1.0, -1.0, 1}));
}

TEST_CASE("norm_inf examples") {
  CHECK(norm_inf(EntireFn::constant(1, 1.0), 1.0).value == doctest::Approx(1.0));
  auto z = norm_inf(parse_fn("poly: z"), 1.0);
  CHECK(z.value == doctest::Approx(std::exp(-0.5)).epsilon(1e-9));
  CHECK(z.value <= std::exp(-0.5) * (1 + 1e-14));
  CHECK(z.argmax.norm() == doctest::Approx(1.0).epsilon(1e-4));
  CPoint w{cplx(1.0, -0.5), cplx(0.3, 0.2)};
  auto k = norm_inf(EntireFn::normalized_kernel(1.5, w), 1.5);
  CHECK(k.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK((k.argmax - w).norm() < 1e-3);
  CHECK(monomial_sup_norm(MultiIndex{1}, 1.0) == doctest::Approx(std::exp(-0.5)));
  auto m = norm_inf(parse_fn("poly: z1^2*z2"), 2.0);
  CHECK(m.value == doctest::Approx(monomial_sup_norm(MultiIndex{2, 1}, 2.0)).epsilon(1e-6));
  CHECK(m.value <= monomial_sup_norm(MultiIndex{2, 1}, 2.0) * (1 + 1e-12));
  // the divergence witness is bounded: weighted modulus e^{-alpha y^2}
  CHECK(norm_inf(EntireFn::exp_square(0.5), 1.0).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(norm_inf(EntireFn::exp_square(0.6), 1.0).finite);
}

TEST_CASE("distance examples") {
  auto dp = DistanceParams::d_alpha(1.0);
  CPoint z{cplx(0.3, 0.8)};
  CHECK(distance(dp, z, z, quad()).value == 0.0);
  CHECK(distance(dp, z, z, Integrator::monte_carlo(1000, 1)).value == 0.0);

  DistanceParams d11{1.0, 1.0, 1.0};
  auto v = distance(d11, CPoint{2.0}, CPoint{0.0}, quad());
  CHECK(v.value >= e - 1);
  CHECK(v.value <= e + 1);

  double h = 1e-3;
  auto s = distance(dp, CPoint{cplx(h, 0)}, CPoint{0.0}, quad());
  CHECK(rel_err(s.value / h, std::sqrt(pi / 2)) < 1e-3);

  // kernel modulus integral
  CHECK(kernel_modulus_integral(0.5, 1.0, CPoint{1.0}) == doctest::Approx(std::exp(0.5)));
  auto kn = kernel_modulus_integral_numeric(0.5, 1.0, CPoint{cplx(1.2, 0.9)}, quad());
  CHECK(rel_err(kn.value, std::exp(2.25 / 2)) < 1e-8);
}

TEST_CASE("distance_p examples") {
  DistanceParams dp{1.0, 1.0, 2.0};
  CHECK(distance_p(dp, CPoint{1.0}, CPoint{1.0}, quad()).value == 0.0);
  auto v = distance_p(dp, CPoint{1.0}, CPoint{0.0}, quad());
  double oracle = std::sqrt(distance_sq_oracle(1.0, 1.0, 1.0));
  CHECK(rel_err(oracle, std::sqrt(e - 1)) < 1e-10);
  CHECK(rel_err(v.value, oracle) < 1e-8);
  auto mc = distance_p(dp, CPoint{1.0}, CPoint{0.0}, Integrator::monte_carlo(200000, 4));
  CHECK(std::abs(mc.value - oracle) <= 4 * mc.std_error + 1e-12);
}

TEST_CASE("distance is symmetric and unitarily invariant") {
  auto dp = DistanceParams::d_alpha(1.0);
  CPoint z{cplx(0.4, -0.2), cplx(0.1, 0.7)}, w{cplx(-0.5, 0.3), cplx(0.2, 0.0)};
  auto a = distance(dp, z, w, quad());
  auto b = distance(dp, w, z, quad());
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
  // rotation (z1, z2) -> (i z2, z1)
  auto U = [](const CPoint& p) { return CPoint{cplx(0, 1) * p[1], p[0]}; };
  CHECK(distance(dp, U(z), U(w), quad()).value == doctest::Approx(a.value).epsilon(1e-6));
}

TEST_CASE("energy examples") {
  CHECK(energy_E(2.0, CPoint{0.0}, quad()).value == doctest::Approx(std::sqrt(pi) / 2).epsilon(1e-10));
  for (double r : {0.5, 1.5, 2.0}) {
    CPoint z{std::polar(r, 0.7)};
    double E = energy_E(1.0, z, quad()).value;
    double oracle = energy_oracle(1.0, r);
    CHECK(rel_err(E, oracle) < 1e-7);
    CHECK(E >= r * std::exp(r * r / 2));
    CHECK(E <= std::sqrt(2.0 + r * r) * std::exp(r * r / 2));
  }
  double E2 = energy_E(1.0, CPoint{2.0}, quad()).value;
  CHECK(E2 >= 2 * e * e);
  CHECK(E2 <= std::sqrt(6.0) * e * e);
  auto mc = energy_E(1.0, CPoint{cplx(1.0, 1.0)}, Integrator::monte_carlo(200000, 9));
  CHECK(std::abs(mc.value - energy_oracle(1.0, std::sqrt(2.0))) <= 4 * mc.std_error);
}

TEST_CASE("coord_energy examples") {
  CHECK(coord_energy(2.0, CPoint{0.0}, 1, quad()).value == doctest::Approx(std::sqrt(pi) / 2).epsilon(1e-10));
  CPoint z{3.0, 0.0};
  double c1 = coord_energy(1.0, z, 1, quad()).value / std::exp(4.5);
  double c2 = coord_energy(1.0, z, 2, quad()).value / std::exp(4.5);
  CHECK(c1 > c2);
  CPoint s{cplx(0.6, 0.2), cplx(0.6, 0.2)};
  CHECK(coord_energy(1.0, s, 1, quad()).value == doctest::Approx(coord_energy(1.0, s, 2, quad()).value).epsilon(1e-8));
  // n = 1: the coordinate energy is E itself
  CHECK(coord_energy(1.0, CPoint{1.3}, 1, quad()).value == doctest::Approx(energy_E(1.0, CPoint{1.3}, quad()).value));
  CHECK_THROWS(coord_energy(1.0, z, 3, quad()));
}

TEST_CASE("second moment identity") {
  CHECK(second_moment_identity(2.0, CPoint{0.0}) == doctest::Approx(1.0));
  CHECK(second_moment_identity(2.0, CPoint{0.0, 0.0}) == doctest::Approx(2.0));
  CHECK(second_moment_identity(1.0, CPoint{cplx(1, 1)}) == doctest::Approx(4 * e));
  CHECK(second_moment_identity(1.0, CPoint{1.0, 1.0}) == doctest::Approx(6 * e));
  for (double r : {0.0, 0.5, 1.0, 1.4}) {
    CPoint z{std::polar(r, 1.1)};
    double oracle = 1.0 * half_line([&](double t) {
      return t * t * t * boost::math::cyl_bessel_i(0, t * r) * std::exp(-t * t / 2);
    });
    CHECK(rel_err(second_moment_identity(1.0, z), oracle) < 1e-10);
    CHECK(rel_err(second_moment_direct(1.0, z, quad()).value, oracle) < 1e-6);
  }
}

TEST_CASE("projection examples") {
  CPoint z{cplx(0.4, -0.9)};
  auto sq = project([](const CPoint& u) { return u[0] * u[0]; }, 1.0, z, quad(64));
  CHECK(rel_err(sq.value, z[0] * z[0]) < 1e-10);
  auto cj = project([](const CPoint& u) { return std::conj(u[0]); }, 1.0, z, quad(64));
  CHECK(std::abs(cj.value) < 1e-10);
  for (double alpha : {0.5, 2.0}) {
    auto m = project([](const CPoint& u) { return cplx(std::norm(u[0])); }, alpha, z, quad(64));
    CHECK(rel_err(m.value, cplx(1.0 / alpha)) < 1e-10);
  }
}

TEST_CASE("incomplete gamma") {
  CHECK(incomplete_gamma(1, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(incomplete_gamma(2, 1.0) == doctest::Approx(2 * std::exp(-1.0)).epsilon(1e-15));
  CHECK(incomplete_gamma(3, 50.0) / (2500 * std::exp(-50.0)) == doctest::Approx(1.0408).epsilon(1e-12));
  for (int n = 1; n <= 8; ++n)
    for (double x : {0.1, 1.0, 5.0, 20.0, 60.0}) {
      double ref = boost::math::tgamma(static_cast<double>(n), x);
      CHECK(rel_err(incomplete_gamma(n, x), ref) < 1e-12);
      CHECK(rel_err(incomplete_gamma_scaled(n, x), ref * std::exp(x)) < 1e-12);
    }
  CHECK(incomplete_gamma_scaled(3, 1000.0) == doctest::Approx(1000.0 * 1000.0 + 2000.0 + 2.0));
  CHECK(incomplete_gamma_scaled(4, 0.0) == doctest::Approx(6.0));
}

TEST_CASE("dual distance") {
  auto same = lemma3_dual_distance(1.0, CPoint{0.5}, CPoint{0.5}, 10, quad());
  CHECK(same.lower == 0.0);
  CHECK(same.upper.value == 0.0);
  for (auto [z, w] : {std::pair{CPoint{cplx(0.3, 0.1)}, CPoint{cplx(-0.2, 0.4)}}, std::pair{CPoint{1.0}, CPoint{0.0}}}) {
    auto dd = lemma3_dual_distance(1.0, z, w, 10, quad());
    CHECK(dd.lower <= dd.upper.value);
    CHECK(rel_err(dd.upper_direct.value, dd.upper.value) < 1e-6);
    CHECK(rel_err(dd.upper.value, 2 * distance(DistanceParams::d_alpha(1.0), z, w, quad()).value) < 1e-12);
  }
}

TEST_CASE("divergence probe") {
  CHECK(divergence_probe(EntireFn::constant(1, 1.0), 2.0, 1.0).verdict == Membership::finite);
  CHECK(divergence_probe(EntireFn::kernel(1.0, CPoint{1.0}), 2.0, 1.0).verdict == Membership::finite);
  auto w = divergence_probe(EntireFn::exp_square(0.5), 2.0, 1.0);
  CHECK(w.verdict == Membership::divergent);
  CHECK(w.growth > 1.5);
  // equally spaced radii see only linear growth, 8/6 between the last two shells
  std::vector<double> radii{2, 4, 6, 8};
  auto lin = divergence_probe(EntireFn::exp_square(0.5), 2.0, 1.0, radii);
  CHECK(lin.growth == doctest::Approx(8.0 / 6.0).epsilon(0.02));
  CHECK(lin.verdict != Membership::finite);
  // e^{(alpha/4) z^2} lies in every F^p
  CHECK(divergence_probe(EntireFn::exp_square(0.25), 1.0, 1.0).verdict == Membership::finite);
  CHECK(divergence_probe(parse_fn("kernel: alpha=1; w=(0.5, 1i)"), 0.5, 1.0).verdict == Membership::finite);
}
