#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "focklab/entire_fn.hpp"

namespace focklab {

// Text form of EntireFn. Items are joined by '|':
//
//   poly: 1 + (2-0.5i)*z1^2*z2 - 3i*z2
//   kernel: alpha=1; w=(1, 0.5+2i)[; normalized]
//   expsq: gamma=0.5[; a=(1)][; poly=<poly>]        (n = 1 only)
//   exp: a=(1, 2i)[; poly=<poly>]
//
// `z` is accepted as a synonym of `z1`. Complex literals are `a`, `bi`, `a+bi`;
// inside a polynomial a non-real coefficient must be parenthesized.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message, std::string_view text);
  std::size_t position() const { return position_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

// n = 0 infers the dimension from the text (vector lengths and variable indices).
EntireFn parse_fn(std::string_view text, int n = 0);

// Canonical text; parse_fn(print_fn(f)) reproduces every coefficient bit for bit.
std::string print_fn(const EntireFn& f);

// "a, b" or "(a, b)" with the complex literals above; n = 0 accepts any length.
CPoint parse_point(std::string_view text, int n = 0);

std::string format_double(double x);
std::string format_complex(cplx c);

}  // namespace focklab
