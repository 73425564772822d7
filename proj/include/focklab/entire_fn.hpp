#pragma once

#include <map>
#include <vector>

#include "focklab/complex_point.hpp"
#include "focklab/log_complex.hpp"

namespace focklab {

// Finite sum of c_m z^m on C^n.
class Polynomial {
 public:
  explicit Polynomial(int n = 1);
  static Polynomial constant(int n, cplx c);
  static Polynomial monomial(const MultiIndex& m, cplx c = 1.0);

  int dim() const { return n_; }
  const std::map<MultiIndex, cplx>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const;
  int degree() const;  // -1 for the zero polynomial
  int degree_in(int k) const;
  cplx coeff(const MultiIndex& m) const;

  cplx eval(const CPoint& z) const;

  // Accumulates c into the coefficient of z^m.
  void add(const MultiIndex& m, cplx c);
  // Drops coefficients with modulus below tol.
  void prune(double tol);

  Polynomial derivative(int k) const;
  Polynomial times_coordinate(int k) const;
  // Keeps only monomials of total degree <= max_degree.
  Polynomial truncated(int max_degree) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(cplx s, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

 private:
  int n_;
  std::map<MultiIndex, cplx> coeffs_;
};

// poly(z) * exp(a.z + gamma z^2). The quadratic exponent is admitted only for n = 1.
struct Term {
  Polynomial poly;
  std::vector<cplx> linear;
  cplx quadratic = 0.0;

  bool same_exponent(const Term& other) const {
    return linear == other.linear && quadratic == other.quadratic;
  }
  bool has_linear() const;
  bool has_quadratic() const { return quadratic != 0.0; }
  // exponent a.z + gamma z^2 at z
  cplx exponent(const CPoint& z) const;
};

class ClosureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Entire function represented exactly as a sum of polynomial x exponential terms.
// Canonical form: terms sorted by exponent, one term per distinct exponent,
// coefficients of modulus < 1e-300 dropped.
class EntireFn {
 public:
  explicit EntireFn(int n = 1);
  EntireFn(int n, std::vector<Term> terms);

  static EntireFn constant(int n, cplx c);
  static EntireFn polynomial(Polynomial p);
  static EntireFn monomial(const MultiIndex& m, cplx c = 1.0);
  static EntireFn coordinate(int n, int k);
  // K_w(z) = exp(alpha z.conj(w))
  static EntireFn kernel(double alpha, const CPoint& w);
  // k_w(z) = exp(alpha z.conj(w) - alpha |w|^2 / 2)
  static EntireFn normalized_kernel(double alpha, const CPoint& w);
  // c exp(a.z)
  static EntireFn exp_linear(const CPoint& a, cplx c = 1.0);
  // c exp(gamma z^2), n = 1
  static EntireFn exp_square(cplx gamma, cplx c = 1.0);

  int dim() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_polynomial() const;
  bool has_quadratic() const;

  cplx operator()(const CPoint& z) const;
  LogComplex eval_log(const CPoint& z) const;

  friend EntireFn operator+(const EntireFn& f, const EntireFn& g);
  friend EntireFn operator-(const EntireFn& f, const EntireFn& g);
  friend EntireFn operator*(const EntireFn& f, const EntireFn& g);
  friend EntireFn operator*(cplx s, const EntireFn& f);

  static constexpr double kDropTolerance = 1e-300;

 private:
  void canonicalize();

  int n_;
  std::vector<Term> terms_;
};

cplx eval(const EntireFn& f, const CPoint& z);

// f(z) exp(-alpha |z|^2 / 2) in log-magnitude form.
LogComplex eval_weighted(const EntireFn& f, const CPoint& z, double alpha);

enum class ArithOp { add, scale, multiply };

// scale multiplies f by the constant function g.
EntireFn arithmetic(const EntireFn& f, const EntireFn& g, ArithOp op);

}  // namespace focklab
