#include "focklab/log_complex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace focklab {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double wrap_phase(double theta) {
  if (!std::isfinite(theta)) return 0.0;
  double r = std::remainder(theta, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

LogComplex LogComplex::from(std::complex<double> x) {
  double m = std::abs(x);
  if (m == 0.0) return {};
  return {std::log(m), wrap_phase(std::arg(x))};
}

LogComplex LogComplex::from_parts(double logmag, double phase) {
  if (logmag == kNegInf) return {};
  return {logmag, wrap_phase(phase)};
}

std::complex<double> LogComplex::to_complex() const {
  if (is_zero()) return 0.0;
  if (logmag > kMaxLog) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {std::cos(phase) >= 0 ? inf : -inf, std::sin(phase) >= 0 ? inf : -inf};
  }
  return std::polar(std::exp(logmag), phase);
}

double LogComplex::modulus() const { return is_zero() ? 0.0 : std::exp(logmag); }

LogComplex operator*(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return {a.logmag + b.logmag, wrap_phase(a.phase + b.phase)};
}

LogComplex LogComplex::scaled(double log_factor) const {
  if (is_zero()) return *this;
  return {logmag + log_factor, phase};
}

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return kNegInf;
  double m = *std::max_element(xs.begin(), xs.end());
  if (m == kNegInf) return kNegInf;
  if (std::isinf(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

LogComplex log_sum(std::span<const LogComplex> xs) {
  double m = kNegInf;
  for (const auto& x : xs) m = std::max(m, x.logmag);
  if (m == kNegInf) return {};
  std::complex<double> s = 0.0;
  for (const auto& x : xs) {
    if (!x.is_zero()) s += std::polar(std::exp(x.logmag - m), x.phase);
  }
  if (s == 0.0) return {};
  return {m + std::log(std::abs(s)), wrap_phase(std::arg(s))};
}

double log_abs_expm1(std::complex<double> d) {
  const double x = d.real();
  const double y = d.imag();
  if (x > 30.0) {
    // |e^d - 1| = e^x |1 - e^{-d}|
    return x + std::log(std::abs(1.0 - std::exp(-d)));
  }
  // e^d - 1 = (expm1(x) cos y - 2 sin^2(y/2)) + i e^x sin y
  const double s = std::sin(0.5 * y);
  const double re = std::expm1(x) * std::cos(y) - 2.0 * s * s;
  const double im = std::exp(x) * std::sin(y);
  const double mod = std::hypot(re, im);
  return mod == 0.0 ? kNegInf : std::log(mod);
}

}  // namespace focklab
