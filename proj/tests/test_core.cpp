#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "focklab/dsl.hpp"
#include "focklab/entire_fn.hpp"
#include "helpers.hpp"

using namespace focklab;
using th::rel_err;

TEST_CASE("CPoint and MultiIndex basics") {
  CPoint z{cplx(1, 2), cplx(3, -1)};
  CHECK(z.dim() == 2);
  CHECK(z.norm2() == doctest::Approx(15.0));
  CHECK(z.dot_conj(z) == cplx(15.0, 0.0));
  CHECK(CPoint::axis(2, 5.0, 1) == CPoint{0.0, 5.0});
  CHECK_THROWS_AS(z + CPoint{1.0}, DimensionError);

  MultiIndex m{2, 1};
  CHECK(m.order() == 3);
  CHECK(m.log_factorial() == doctest::Approx(std::log(2.0)));
  CHECK(m.dominates(MultiIndex{1, 1}));
  CHECK_FALSE(m.dominates(MultiIndex{0, 2}));
  CHECK(m.monomial(CPoint{2.0, 3.0}) == cplx(12.0, 0.0));
  CHECK(multi_indices_of_order(2, 2).size() == 3);
  CHECK(multi_indices_of_order(1, 4).size() == 1);
}

TEST_CASE("log-domain helpers") {
  auto x = LogComplex::from(cplx(-3.0, 4.0));
  CHECK(x.logmag == doctest::Approx(std::log(5.0)));
  CHECK(rel_err(x.to_complex(), cplx(-3, 4)) < 1e-15);
  CHECK(LogComplex::from(0.0).is_zero());
  CHECK(wrap_phase(3 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
  std::vector<double> xs{1000.0, 1000.0};
  CHECK(log_sum_exp(xs) == doctest::Approx(1000.0 + std::log(2.0)));
  CHECK(log_abs_expm1(cplx(1e-12, 0)) == doctest::Approx(std::log(1e-12)).epsilon(1e-9));
  CHECK(log_abs_expm1(cplx(800.0, 0)) == doctest::Approx(800.0));
  std::vector<LogComplex> terms{LogComplex::from(2.0), LogComplex::from(-2.0)};
  CHECK(log_sum(terms).modulus() < 1e-15);
}

TEST_CASE("eval examples") {
  CHECK(rel_err(eval(EntireFn::monomial(MultiIndex{2}), CPoint{cplx(1, 1)}), cplx(0, 2)) < 1e-15);
  auto K0 = EntireFn::kernel(1.0, CPoint{0.0});
  CHECK(eval(K0, CPoint{cplx(3, -2)}) == cplx(1.0, 0.0));
  auto k1 = EntireFn::normalized_kernel(1.0, CPoint{1.0});
  CHECK(rel_err(eval(k1, CPoint{1.0}), cplx(std::exp(0.5), 0)) < 1e-14);
}

TEST_CASE("eval_weighted examples") {
  auto one = EntireFn::constant(1, 1.0);
  auto v = eval_weighted(one, CPoint{cplx(1, 1)}, 1.0);
  CHECK(v.logmag == doctest::Approx(-1.0));
  CHECK(v.phase == 0.0);

  CPoint w{cplx(0.7, -1.3)};
  auto kw = eval_weighted(EntireFn::normalized_kernel(1.3, w), w, 1.3);
  CHECK(std::abs(kw.logmag) < 1e-13);

  auto Kw = eval_weighted(EntireFn::kernel(1.0, CPoint{2.0}), CPoint{2.0}, 1.0);
  CHECK(Kw.logmag == doctest::Approx(2.0));

  // large arguments stay finite in log form
  auto big = eval_weighted(EntireFn::kernel(1.0, CPoint{30.0}), CPoint{30.0}, 1.0);
  CHECK(big.logmag == doctest::Approx(450.0));
}

TEST_CASE("arithmetic examples") {
  CPoint w{cplx(1, 2)};
  auto prod = arithmetic(EntireFn::coordinate(1, 0), EntireFn::kernel(2.0, w), ArithOp::multiply);
  REQUIRE(prod.terms().size() == 1);
  const auto& t = prod.terms()[0];
  CHECK(t.poly.coeffs().size() == 1);
  CHECK(t.poly.coeff(MultiIndex{1}) == cplx(1.0, 0.0));
  CHECK(rel_err(t.linear[0], 2.0 * std::conj(w[0])) < 1e-15);

  auto f = parse_fn("poly: 1 + (2-1i)*z^3 | exp: a=(0.5i)");
  auto zero = arithmetic(f, arithmetic(f, EntireFn::constant(1, -1.0), ArithOp::scale), ArithOp::add);
  CHECK(zero.is_zero());

  auto a = parse_fn("poly: 1 + z");
  auto b = parse_fn("poly: 1 - z");
  CHECK(print_fn(a * b) == print_fn(parse_fn("poly: 1 - z^2")));
}

TEST_CASE("arithmetic and weighted-eval invariants on random inputs") {
  std::mt19937_64 g(7);
  auto random_fn = [&](int n) {
    EntireFn f(n);
    std::uniform_int_distribution<int> deg(0, 3);
    for (int t = 0; t < 2; ++t) {
      Polynomial p(n);
      std::vector<int> e(static_cast<std::size_t>(n));
      for (auto& x : e) x = deg(g);
      p.add(MultiIndex(e), th::rand_c(g));
      p.add(MultiIndex::zero(n), th::rand_c(g));
      std::vector<cplx> lin;
      for (int k = 0; k < n; ++k) lin.push_back(t == 0 ? cplx(0) : th::rand_c(g, 0.7));
      f = f + EntireFn(n, {Term{p, lin, 0.0}});
    }
    return f;
  };
  for (int i = 0; i < 100; ++i) {
    int n = 1 + i % 2;
    auto f = random_fn(n), h = random_fn(n);
    CPoint z = th::rand_point(g, n);
    cplx lhs = eval(arithmetic(f, h, ArithOp::add), z);
    cplx rhs = eval(f, z) + eval(h, z);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));

    double alpha = 0.5 + 0.1 * (i % 10);
    double wm = eval_weighted(f, z, alpha).modulus();
    double direct = std::abs(eval(f, z)) * std::exp(-alpha * z.norm2() / 2);
    if (direct > 1e-250) CHECK(rel_err(wm, direct) <= 1e-10);
  }
}

TEST_CASE("closure rules for quadratic terms") {
  auto q = EntireFn::exp_square(0.5);
  CHECK(q.has_quadratic());
  CHECK_THROWS_AS(q * q, ClosureError);
  CHECK_THROWS((void)EntireFn(2, {Term{Polynomial::constant(2, 1.0), {0.0, 0.0}, 0.5}}));
  CHECK(rel_err(eval(q, CPoint{cplx(0, 1)}), cplx(std::exp(-0.5), 0)) < 1e-15);
}

TEST_CASE("DSL parses the documented forms") {
  auto f = parse_fn("poly: 1 + (2-0.5i)*z1^2*z2 - 3i*z2");
  CHECK(f.dim() == 2);
  CPoint z{cplx(0.3, 1), cplx(-1, 0.2)};
  cplx expect = 1.0 + cplx(2, -0.5) * z[0] * z[0] * z[1] - cplx(0, 3) * z[1];
  CHECK(rel_err(eval(f, z), expect) < 1e-14);

  auto k = parse_fn("kernel: alpha=1; w=(1, 0.5+2i)");
  CHECK(rel_err(eval(k, z), eval(EntireFn::kernel(1.0, CPoint{1.0, cplx(0.5, 2)}), z)) < 1e-14);
  auto kn = parse_fn("kernel: alpha=2; w=(1); normalized");
  CHECK(rel_err(eval(kn, CPoint{0.4}), eval(EntireFn::normalized_kernel(2.0, CPoint{1.0}), CPoint{0.4})) < 1e-14);
  auto e = parse_fn("expsq: gamma=0.5; poly=z");
  CHECK(rel_err(eval(e, CPoint{cplx(1, 1)}), cplx(1, 1) * std::exp(0.5 * cplx(1, 1) * cplx(1, 1))) < 1e-14);
  auto x = parse_fn("exp: a=(1, 2i) | poly: z2");
  CHECK(x.dim() == 2);
}

TEST_CASE("DSL round trip is bit exact") {
  std::mt19937_64 g(11);
  const char* texts[] = {
      "poly: 1 + (2-0.5i)*z1^2*z2 - 3i*z2",
      "kernel: alpha=1.3; w=(0.1+0.2i, -0.7)",
      "poly: 0.1 | exp: a=(0.3-0.4i)",
      "expsq: gamma=0.25; a=(1); poly=z^2 + 1",
      "poly: 0.333333333333333314829616256247390992939472198486328125*z^7",
  };
  for (const char* t : texts) {
    auto f = parse_fn(t);
    auto again = parse_fn(print_fn(f));
    CHECK(print_fn(again) == print_fn(f));
    for (int i = 0; i < 20; ++i) {
      CPoint z = th::rand_point(g, f.dim());
      CHECK(eval(again, z) == eval(f, z));
    }
  }
  // printing random doubles and reparsing keeps every bit
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 50; ++i) {
    double a = u(g) / 3.0, b = u(g) * 1e-7;
    auto f = EntireFn::constant(1, cplx(a, b));
    CHECK(parse_fn(print_fn(f)).terms()[0].poly.coeff(MultiIndex{0}) == cplx(a, b));
  }
}

TEST_CASE("DSL errors carry positions") {
  try {
    (void)parse_fn("poly: 1 + * z");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 10);
    CHECK(std::string(e.what()).find('^') != std::string::npos);
  }
  CHECK_THROWS_AS(parse_fn("kernel: alpha=1"), ParseError);
  CHECK_THROWS_AS(parse_fn("bogus: 1"), ParseError);
  CHECK_THROWS_AS(parse_fn("expsq: gamma=1", 2), std::exception);
  CHECK_THROWS_AS(parse_fn("poly: z3", 2), std::exception);
}

TEST_CASE("parse_point") {
  CHECK(parse_point("1, 2i") == CPoint{1.0, cplx(0, 2)});
  CHECK(parse_point("(0.5-1i)") == CPoint{cplx(0.5, -1)});
  CHECK_THROWS_AS(parse_point("1, 2", 1), std::exception);
  CHECK_THROWS_AS(parse_point("1,,2"), ParseError);
}
