#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "focklab/complex_point.hpp"

namespace th {

using focklab::cplx;
using focklab::CPoint;

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }
inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

inline cplx rand_c(std::mt19937_64& g, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  return {d(g), d(g)};
}

inline CPoint rand_point(std::mt19937_64& g, int n, double scale = 1.0) {
  std::vector<cplx> v;
  for (int k = 0; k < n; ++k) v.push_back(rand_c(g, scale));
  return CPoint(v);
}

}  // namespace th
