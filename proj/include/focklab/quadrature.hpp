#pragma once

#include <string>
#include <vector>

#include "focklab/complex_point.hpp"

namespace focklab {

// d lambda_alpha(z) = (alpha/pi)^n exp(-alpha |z|^2) dv(z), a probability measure on C^n.
struct GaussianMeasure {
  double alpha = 1.0;
  int n = 1;

  GaussianMeasure() = default;
  GaussianMeasure(double alpha, int n);
  // log of the density with respect to dv
  double log_density(const CPoint& z) const;
};

// One-dimensional Gauss rule for a weight on the real line (or half line).
struct GaussRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;  // sum to the total mass of the weight
};

// Gauss rule for the weight with three-term recurrence p_{k+1} = (t - a_k) p_k - b_k^2 p_{k-1}.
// b[0] is unused; mass is the integral of the weight. Nodes come from the Jacobi matrix and are
// polished by Newton steps on the recurrence; weights are inverse Christoffel sums.
GaussRule1D gauss_from_recurrence(const std::vector<double>& a, const std::vector<double>& b, double mass);

// Weight 1 on [-1, 1].
const GaussRule1D& gauss_legendre_1d(int order);

// Weight exp(-t^2) on R.
const GaussRule1D& gauss_hermite_1d(int order);

// Weight t exp(-t^2) on [0, inf), via a discretized Stieltjes procedure.
const GaussRule1D& half_range_hermite_1d(int order);

enum class RuleKind { gauss_hermite, polar };

std::string to_string(RuleKind kind);

// Rule on one complex coordinate for lambda_alpha restricted to that coordinate.
struct CoordRule {
  std::vector<cplx> nodes;
  std::vector<double> weights;
};

// Tensor-product rule on C^n: the node set is the product of per-coordinate rules.
class QuadratureRule {
 public:
  QuadratureRule(GaussianMeasure measure, RuleKind kind, int order, std::vector<CoordRule> coords);

  const GaussianMeasure& measure() const { return measure_; }
  RuleKind kind() const { return kind_; }
  int order() const { return order_; }
  std::size_t size() const { return size_; }

  CPoint node(std::size_t i) const;
  double weight(std::size_t i) const;
  // writes node i into a caller-owned buffer (length n) and returns its weight
  double node_into(std::size_t i, std::vector<cplx>& out) const;

  double weight_sum() const;

  // Same rule for the same measure with nodes translated by `center`; weights carry the
  // density ratio lambda(x + c) / lambda(x).
  QuadratureRule shifted(const CPoint& center) const;
  // Translation of coordinate k only.
  QuadratureRule shifted_coordinate(int k, cplx center) const;

  const std::vector<CoordRule>& coordinate_rules() const { return coords_; }
  // accumulated translation per coordinate
  const std::vector<cplx>& centers() const { return centers_; }
  // Same kind and translation at another order.
  QuadratureRule with_order(int order) const;

 private:
  GaussianMeasure measure_;
  RuleKind kind_;
  int order_;
  std::vector<CoordRule> coords_;
  std::vector<cplx> centers_;
  std::size_t size_ = 1;
};

// Cartesian tensor Gauss-Hermite: `order` points per real axis, t = sqrt(alpha) x.
// Requires order in [4, 128] and n <= 2.
QuadratureRule gauss_hermite_rule(const GaussianMeasure& measure, int order);

// Product of per-coordinate polar rules: `order` radial nodes (weight t e^{-t^2}) and 2*order
// equispaced angles. Exact for u^j conj(u)^k with j + k < 2*order.
QuadratureRule polar_rule(const GaussianMeasure& measure, int order);

QuadratureRule make_rule(const GaussianMeasure& measure, RuleKind kind, int order);

int default_order(int n);

}  // namespace focklab
