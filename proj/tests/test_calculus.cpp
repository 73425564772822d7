#include <doctest.h>

#include <cmath>
#include <random>

#include "focklab/calculus.hpp"
#include "focklab/dsl.hpp"
#include "helpers.hpp"

using namespace focklab;
using th::rel_err;

namespace {

std::vector<EntireFn> sample_fns() {
  return {parse_fn("poly: 1 + (2-1i)*z^3 - 0.5*z"),
          parse_fn("kernel: alpha=1; w=(0.5-0.3i)"),
          parse_fn("poly: z1*z2^2 + 3i*z2 | exp: a=(0.2, -0.4i)"),
          parse_fn("kernel: alpha=0.7; w=(1, 1i); normalized"),
          parse_fn("expsq: gamma=0.5; poly=z + 2"),
          parse_fn("poly: 2*z^2 | exp: a=(1i); poly=z")};
}

}  // namespace

TEST_CASE("partial examples") {
  auto d = partial(parse_fn("poly: z^3"), 0);
  CHECK(print_fn(d) == print_fn(parse_fn("poly: 3*z^2")));
  CHECK(print_fn(partial(parse_fn("poly: z1*z2"), 0)) == print_fn(parse_fn("poly: z2", 2)));
  CPoint w{cplx(0.4, 1.1), cplx(-0.2, 0.3)};
  auto K = EntireFn::kernel(1.5, w);
  CPoint z{cplx(0.1, -0.6), cplx(1.0, 0.5)};
  for (int k = 0; k < 2; ++k)
    CHECK(rel_err(eval(partial(K, k), z), 1.5 * std::conj(w[k]) * eval(K, z)) < 1e-14);
  CHECK_THROWS_AS(partial(K, 2), std::exception);
}

TEST_CASE("radial examples") {
  CHECK(radial(EntireFn::constant(1, 5.0)).is_zero());
  CHECK(print_fn(radial(parse_fn("poly: z1^2*z2"))) == print_fn(parse_fn("poly: 3*z1^2*z2")));
  CPoint w{cplx(0.4, 1.1), cplx(-0.2, 0.3)};
  auto K = EntireFn::kernel(1.0, w);
  CPoint z{cplx(0.1, -0.6), cplx(1.0, 0.5)};
  CHECK(rel_err(eval(radial(K), z), z.dot_conj(w) * eval(K, z)) < 1e-14);
}

TEST_CASE("radial_power examples") {
  MultiIndex m{2, 3};
  auto f = EntireFn::monomial(m);
  CPoint z{cplx(0.3, 0.2), cplx(-0.5, 0.9)};
  CHECK(rel_err(eval(radial_power(f, 2), z), 25.0 * eval(f, z)) < 1e-14);
  CHECK(print_fn(radial_power(parse_fn("poly: z"), 2)) == print_fn(parse_fn("poly: z")));
  auto K = EntireFn::kernel(1.0, CPoint{1.0});
  CHECK(rel_err(eval(radial_power(K, 2), CPoint{1.0}), cplx(2 * std::numbers::e, 0)) < 1e-14);
  // finite-difference cross check of R^2 K at z = 1: R = z d/dz applied twice
  auto Rf = [&](double x, double h) {
    auto f1 = [&](double t) { return t * (eval(K, CPoint{t + h}) - eval(K, CPoint{t - h})) / (2 * h); };
    return x * (f1(x + h) - f1(x - h)) / (2 * h);
  };
  CHECK(std::abs(Rf(1.0, 1e-4) - 2 * std::numbers::e) < 1e-5);
  CHECK_THROWS(radial_power(K, 9));
}

TEST_CASE("partial_multi examples") {
  CHECK(print_fn(partial_multi(parse_fn("poly: z^2"), MultiIndex{2})) == print_fn(EntireFn::constant(1, 2.0)));
  CHECK(print_fn(partial_multi(parse_fn("poly: z1*z2"), MultiIndex{1, 1})) == print_fn(EntireFn::constant(2, 1.0)));
  auto K = EntireFn::kernel(1.0, CPoint{1.0, 1.0});
  CPoint z{cplx(0.2, 0.1), cplx(-0.4, 0.3)};
  CHECK(rel_err(eval(partial_multi(K, MultiIndex{0, 2}), z), eval(K, z)) < 1e-14);
}

TEST_CASE("mixed partials commute") {
  std::mt19937_64 g(3);
  for (const auto& f : sample_fns()) {
    if (f.dim() != 2) continue;
    auto a = partial(partial(f, 0), 1);
    auto b = partial(partial(f, 1), 0);
    for (int i = 0; i < 10; ++i) {
      CPoint z = th::rand_point(g, 2);
      CHECK(std::abs(eval(a, z) - eval(b, z)) <= 1e-12 * (1 + std::abs(eval(a, z))));
    }
  }
}

TEST_CASE("gradient_norm_at examples") {
  CHECK(gradient_norm_at(parse_fn("poly: z1 + z2"), CPoint{cplx(3, 1), 2.0}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(gradient_norm_at(EntireFn::constant(2, 4.0), CPoint{1.0, 1.0}) == 0.0);
  CHECK(gradient_norm_at(EntireFn::kernel(1.0, CPoint{1.0}), CPoint{0.0}) == doctest::Approx(1.0));
}

TEST_CASE("deflate examples") {
  CHECK(print_fn(deflate(parse_fn("poly: z^3 - z^2"), MultiIndex{1})) == print_fn(parse_fn("poly: z^2 - z")));
  CHECK(print_fn(deflate(parse_fn("poly: z1*z2"), MultiIndex{1, 0})) == print_fn(parse_fn("poly: z2", 2)));
  auto f = EntireFn::kernel(1.0, CPoint{1.0}) - EntireFn::constant(1, 1.0);
  auto q = deflate(f, MultiIndex{1}, 32);
  REQUIRE(q.is_polynomial());
  double fact = 1.0;
  for (int j = 1; j <= 32; ++j) {
    fact *= j;
    CHECK(rel_err(q.terms()[0].poly.coeff(MultiIndex{j - 1}), cplx(1.0 / fact, 0)) < 1e-13);
  }
  CHECK(q.terms()[0].poly.degree() == 31);
  CHECK_THROWS_AS(deflate(parse_fn("poly: 1 + z"), MultiIndex{1}), DeflationError);
  CHECK(deflation_error_bound(f, 32, 2.0) < 1e-20);
}

TEST_CASE("finite-difference oracle for partials") {
  std::mt19937_64 g(5);
  auto fns = sample_fns();
  const double h = 1e-5;
  for (int i = 0; i < 30; ++i) {
    const auto& f = fns[static_cast<std::size_t>(i) % fns.size()];
    int k = i % f.dim();
    CPoint z = th::rand_point(g, f.dim(), 0.8);
    CPoint e = CPoint::axis(f.dim(), h, k);
    cplx fd = (eval(f, z + e) - eval(f, z - e)) / (2 * h);
    cplx exact = eval(partial(f, k), z);
    CHECK(std::abs(fd - exact) <= 1e-6 * (1 + std::abs(exact)));
  }
}

TEST_CASE("radial_power matches repeated radial") {
  std::mt19937_64 g(9);
  for (const auto& f : sample_fns()) {
    EntireFn r = f;
    for (int N = 1; N <= 4; ++N) {
      r = radial(r);
      auto p = radial_power(f, N);
      for (int i = 0; i < 5; ++i) {
        CPoint z = th::rand_point(g, f.dim());
        cplx a = eval(p, z), b = eval(r, z);
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
      }
    }
  }
}

TEST_CASE("Euler identity for homogeneous polynomials") {
  auto f = parse_fn("poly: (1+2i)*z1^3 - z1*z2^2 + 4*z2^3");
  auto Rf = radial(f);
  CHECK(print_fn(Rf) == print_fn(3.0 * f));
}

TEST_CASE("deflate then multiply reproduces f") {
  std::mt19937_64 g(13);
  auto p = parse_fn("poly: z1^2*z2 + (1-1i)*z1^3*z2^2");
  MultiIndex m{2, 1};
  auto q = deflate(p, m);
  auto back = q * EntireFn::monomial(m);
  CHECK(print_fn(back) == print_fn(p));

  auto K = EntireFn::kernel(1.0, CPoint{cplx(0.6, 0.2)});
  auto f = K - EntireFn::constant(1, 1.0) - EntireFn::monomial(MultiIndex{1}, 0.6 * cplx(1, -1.0 / 3.0));
  auto q2 = deflate(f, MultiIndex{2});
  for (int i = 0; i < 10; ++i) {
    CPoint z = th::rand_point(g, 1);
    cplx a = eval(q2, z) * z[0] * z[0];
    CHECK(std::abs(a - eval(f, z)) <= 1e-8 * (1 + std::abs(eval(f, z))));
  }
}
