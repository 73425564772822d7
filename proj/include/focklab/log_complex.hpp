#pragma once

#include <complex>
#include <limits>
#include <span>

namespace focklab {

// A complex number stored as (log|x|, arg x). logmag == -inf encodes zero.
struct LogComplex {
  double logmag = -std::numeric_limits<double>::infinity();
  double phase = 0.0;  // in (-pi, pi]

  static LogComplex from(std::complex<double> x);
  static LogComplex from_parts(double logmag, double phase);
  static LogComplex zero() { return {}; }
  static LogComplex one() { return {0.0, 0.0}; }

  bool is_zero() const { return logmag == -std::numeric_limits<double>::infinity(); }

  // Exact when logmag <= kMaxLog; saturates to an infinite modulus above it.
  std::complex<double> to_complex() const;
  double modulus() const;

  friend LogComplex operator*(const LogComplex& a, const LogComplex& b);
  // Multiplication by a positive real given in log form.
  LogComplex scaled(double log_factor) const;

  static constexpr double kMaxLog = 700.0;
};

// Wraps an angle into (-pi, pi].
double wrap_phase(double theta);

// log(sum_i exp(x_i)); -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> xs);

// Sum of log-domain complex numbers without leaving log form.
LogComplex log_sum(std::span<const LogComplex> xs);

// log|exp(d) - 1| for complex d, accurate for small |d| and for large Re d.
double log_abs_expm1(std::complex<double> d);

}  // namespace focklab
