#include "focklab/calculus.hpp"

#include <cmath>
#include <string>

#include "focklab/dsl.hpp"

namespace focklab {

EntireFn partial(const EntireFn& f, int k) {
  if (k < 0 || k >= f.dim()) {
    throw std::out_of_range("partial: coordinate index " + std::to_string(k + 1) + " outside [1, " +
                            std::to_string(f.dim()) + "]");
  }
  std::vector<Term> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    // d_k [p e^{a.z + g z^2}] = (d_k p + a_k p + 2 g z p) e^{...}
    Polynomial p = t.poly.derivative(k);
    cplx ak = t.linear[static_cast<std::size_t>(k)];
    if (ak != 0.0) p = p + ak * t.poly;
    if (t.has_quadratic()) p = p + (2.0 * t.quadratic) * t.poly.times_coordinate(0);
    out.push_back(Term{std::move(p), t.linear, t.quadratic});
  }
  return EntireFn(f.dim(), std::move(out));
}

EntireFn radial(const EntireFn& f) {
  std::vector<Term> out;
  out.reserve(f.terms().size());
  for (int k = 0; k < f.dim(); ++k) {
    const EntireFn dk = partial(f, k);
    for (const auto& t : dk.terms()) {
      out.push_back(Term{t.poly.times_coordinate(k), t.linear, t.quadratic});
    }
  }
  return EntireFn(f.dim(), std::move(out));
}

EntireFn radial_power(const EntireFn& f, int N) {
  if (N < 1 || N > kMaxRadialPower) {
    throw std::out_of_range("radial_power: N must lie in [1, " + std::to_string(kMaxRadialPower) + "]");
  }
  EntireFn g = f;
  for (int j = 0; j < N; ++j) g = radial(g);
  return g;
}

EntireFn partial_multi(const EntireFn& f, const MultiIndex& m) {
  require_same_dim(f.dim(), m.dim(), "partial_multi");
  if (m.order() > kMaxMultiOrder) {
    throw std::out_of_range("partial_multi: |m| must be <= " + std::to_string(kMaxMultiOrder));
  }
  EntireFn g = f;
  for (int k = 0; k < m.dim(); ++k) {
    for (int j = 0; j < m[k]; ++j) g = partial(g, k);
  }
  return g;
}

double gradient_norm_at(const EntireFn& f, const CPoint& z) {
  require_same_dim(f.dim(), z.dim(), "gradient_norm_at");
  double s = 0.0;
  for (int k = 0; k < f.dim(); ++k) s += std::norm(partial(f, k)(z));
  return std::sqrt(s);
}

namespace {

// Taylor coefficients of exp(a z + g z^2) in one variable through `degree`:
// (j+1) c_{j+1} = a c_j + 2 g c_{j-1}
std::vector<cplx> exp_series_1d(cplx a, cplx g, int degree) {
  std::vector<cplx> c(static_cast<std::size_t>(degree + 1));
  c[0] = 1.0;
  for (int j = 0; j < degree; ++j) {
    cplx next = a * c[static_cast<std::size_t>(j)];
    if (j >= 1) next += 2.0 * g * c[static_cast<std::size_t>(j - 1)];
    c[static_cast<std::size_t>(j + 1)] = next / static_cast<double>(j + 1);
  }
  return c;
}

Polynomial exp_series(const Term& t, int n, int degree) {
  // exp(a.z) = prod_k exp(a_k z_k); the quadratic part only occurs for n = 1
  Polynomial acc = Polynomial::constant(n, 1.0);
  for (int k = 0; k < n; ++k) {
    cplx ak = t.linear[static_cast<std::size_t>(k)];
    cplx gk = (k == 0) ? t.quadratic : cplx{0.0};
    if (ak == 0.0 && gk == 0.0) continue;
    auto c = exp_series_1d(ak, gk, degree);
    Polynomial factor(n);
    for (int j = 0; j <= degree; ++j) factor.add(MultiIndex::zero(n).with(k, j), c[static_cast<std::size_t>(j)]);
    acc = (acc * factor).truncated(degree);
  }
  return acc;
}

}  // namespace

Polynomial taylor_polynomial(const EntireFn& f, int degree) {
  Polynomial out(f.dim());
  for (const auto& t : f.terms()) {
    if (!t.has_linear() && !t.has_quadratic()) {
      out = out + t.poly.truncated(degree);
    } else {
      out = out + (t.poly * exp_series(t, f.dim(), degree)).truncated(degree);
    }
  }
  return out;
}

DeflationError::DeflationError(const MultiIndex& offending, cplx coefficient)
    : std::invalid_argument("deflate: Taylor coefficient of z^(" +
                            [&] {
                              std::string s;
                              for (int k = 0; k < offending.dim(); ++k) {
                                if (k) s += ",";
                                s += std::to_string(offending[k]);
                              }
                              return s;
                            }() +
                            ") is " + format_complex(coefficient) + ", expected 0"),
      offending_(offending),
      coefficient_(coefficient) {}

EntireFn deflate(const EntireFn& f, const MultiIndex& m, int taylor_degree) {
  require_same_dim(f.dim(), m.dim(), "deflate");
  Polynomial p(f.dim());
  if (f.is_polynomial()) {
    for (const auto& t : f.terms()) p = p + t.poly;
  } else {
    p = taylor_polynomial(f, taylor_degree);
  }
  double scale = 0.0;
  for (const auto& [idx, c] : p.coeffs()) scale = std::max(scale, std::abs(c));
  const double tol = f.is_polynomial() ? 0.0 : 1e-12 * std::max(scale, 1.0);
  Polynomial q(f.dim());
  for (const auto& [idx, c] : p.coeffs()) {
    if (idx.dominates(m)) {
      q.add(idx - m, c);
    } else if (std::abs(c) > tol) {
      throw DeflationError(idx, c);
    }
  }
  return EntireFn::polynomial(std::move(q));
}

double deflation_error_bound(const EntireFn& f, int taylor_degree, double radius) {
  double bound = 0.0;
  const double d1 = taylor_degree + 1.0;
  for (const auto& t : f.terms()) {
    if (!t.has_linear() && !t.has_quadratic()) continue;
    double a = 0.0;
    for (cplx ak : t.linear) a += std::norm(ak);
    double rate = std::sqrt(a) * radius + 2.0 * std::abs(t.quadratic) * radius * radius;
    if (rate == 0.0) continue;
    double lp = 0.0;  // log of max |poly| on the ball
    double pmax = 0.0;
    for (const auto& [idx, c] : t.poly.coeffs()) pmax += std::abs(c) * std::pow(radius, idx.order());
    lp = std::log(pmax);
    bound += std::exp(lp + d1 * std::log(rate) - std::lgamma(d1 + 1.0));
  }
  return bound;
}

}  // namespace focklab
