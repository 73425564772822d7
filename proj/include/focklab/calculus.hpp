#pragma once

#include <stdexcept>

#include "focklab/entire_fn.hpp"

namespace focklab {

inline constexpr int kMaxRadialPower = 8;
inline constexpr int kMaxMultiOrder = 8;
inline constexpr int kDefaultTaylorDegree = 32;

// d f / d z_k, k zero-based.
EntireFn partial(const EntireFn& f, int k);

// Rf = sum_k z_k d_k f
EntireFn radial(const EntireFn& f);

// N-fold composition of radial, 1 <= N <= 8.
EntireFn radial_power(const EntireFn& f, int N);

// d^m f, |m| <= 8, coordinates differentiated in lexicographic order.
EntireFn partial_multi(const EntireFn& f, const MultiIndex& m);

// (sum_k |d_k f(z)|^2)^{1/2}
double gradient_norm_at(const EntireFn& f, const CPoint& z);

// Taylor polynomial of f at the origin through total degree `degree`. Exact for polynomial
// terms; exponential factors are expanded.
Polynomial taylor_polynomial(const EntireFn& f, int degree);

// Raised when the Taylor coefficients of f below z^m do not vanish.
class DeflationError : public std::invalid_argument {
 public:
  DeflationError(const MultiIndex& offending, cplx coefficient);
  const MultiIndex& offending() const { return offending_; }
  cplx coefficient() const { return coefficient_; }

 private:
  MultiIndex offending_;
  cplx coefficient_;
};

// g with z^m g = f. Exact when f is a polynomial; otherwise g is the quotient of the
// degree-`taylor_degree` Taylor polynomial, with error bounded by
// deflation_error_bound().
EntireFn deflate(const EntireFn& f, const MultiIndex& m, int taylor_degree = kDefaultTaylorDegree);

// (|a| R)^{D+1} / (D+1)! summed over exponential terms, |a| the largest linear-form
// modulus (plus 2|gamma| R for quadratic terms), evaluated on |z| <= radius.
double deflation_error_bound(const EntireFn& f, int taylor_degree, double radius);

}  // namespace focklab
