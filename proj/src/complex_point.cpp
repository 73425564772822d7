#include "focklab/complex_point.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace focklab {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

CPoint::CPoint(std::vector<cplx> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DimensionError("CPoint: dimension must be >= 1");
}

CPoint::CPoint(std::initializer_list<cplx> coords) : CPoint(std::vector<cplx>(coords)) {}

CPoint CPoint::zero(int n) { return CPoint(std::vector<cplx>(static_cast<std::size_t>(n))); }

CPoint CPoint::axis(int n, cplx value, int k) {
  std::vector<cplx> c(static_cast<std::size_t>(n));
  c.at(static_cast<std::size_t>(k)) = value;
  return CPoint(std::move(c));
}

double CPoint::norm2() const {
  double s = 0.0;
  for (const auto& c : coords_) s += std::norm(c);
  return s;
}

double CPoint::norm() const { return std::sqrt(norm2()); }

cplx CPoint::dot_conj(const CPoint& u) const {
  require_same_dim(dim(), u.dim(), "dot_conj");
  cplx s = 0.0;
  for (int k = 0; k < dim(); ++k) s += (*this)[k] * std::conj(u[k]);
  return s;
}

cplx CPoint::dot(const CPoint& z) const {
  require_same_dim(dim(), z.dim(), "dot");
  cplx s = 0.0;
  for (int k = 0; k < dim(); ++k) s += (*this)[k] * z[k];
  return s;
}

CPoint CPoint::conj() const {
  std::vector<cplx> c(coords_);
  for (auto& x : c) x = std::conj(x);
  return CPoint(std::move(c));
}

CPoint CPoint::with(int k, cplx value) const {
  std::vector<cplx> c(coords_);
  c.at(static_cast<std::size_t>(k)) = value;
  return CPoint(std::move(c));
}

CPoint operator+(const CPoint& a, const CPoint& b) {
  require_same_dim(a.dim(), b.dim(), "CPoint +");
  std::vector<cplx> c(a.coords_);
  for (int k = 0; k < a.dim(); ++k) c[static_cast<std::size_t>(k)] += b[k];
  return CPoint(std::move(c));
}

CPoint operator-(const CPoint& a, const CPoint& b) {
  require_same_dim(a.dim(), b.dim(), "CPoint -");
  std::vector<cplx> c(a.coords_);
  for (int k = 0; k < a.dim(); ++k) c[static_cast<std::size_t>(k)] -= b[k];
  return CPoint(std::move(c));
}

CPoint operator*(cplx s, const CPoint& a) {
  std::vector<cplx> c(a.coords_);
  for (auto& x : c) x *= s;
  return CPoint(std::move(c));
}

std::string CPoint::str() const {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (int k = 0; k < dim(); ++k) {
    if (k) os << ", ";
    os << (*this)[k].real() << (std::signbit((*this)[k].imag()) ? "-" : "+")
       << std::abs((*this)[k].imag()) << 'i';
  }
  os << ')';
  return os.str();
}

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex MultiIndex::zero(int n) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(n))); }

MultiIndex MultiIndex::unit(int n, int k) { return zero(n).with(k, 1); }

int MultiIndex::order() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

double MultiIndex::log_factorial() const {
  double s = 0.0;
  for (int e : exps_) s += std::lgamma(e + 1.0);
  return s;
}

bool MultiIndex::dominates(const MultiIndex& other) const {
  require_same_dim(dim(), other.dim(), "MultiIndex::dominates");
  for (int k = 0; k < dim(); ++k) {
    if ((*this)[k] < other[k]) return false;
  }
  return true;
}

MultiIndex MultiIndex::with(int k, int value) const {
  std::vector<int> e(exps_);
  e.at(static_cast<std::size_t>(k)) = value;
  return MultiIndex(std::move(e));
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  require_same_dim(a.dim(), b.dim(), "MultiIndex +");
  std::vector<int> e(a.exps_);
  for (int k = 0; k < a.dim(); ++k) e[static_cast<std::size_t>(k)] += b[k];
  return MultiIndex(std::move(e));
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
  require_same_dim(a.dim(), b.dim(), "MultiIndex -");
  std::vector<int> e(a.exps_);
  for (int k = 0; k < a.dim(); ++k) e[static_cast<std::size_t>(k)] -= b[k];
  return MultiIndex(std::move(e));
}

cplx MultiIndex::monomial(const CPoint& z) const {
  require_same_dim(dim(), z.dim(), "MultiIndex::monomial");
  cplx v = 1.0;
  for (int k = 0; k < dim(); ++k) {
    for (int j = 0; j < (*this)[k]; ++j) v *= z[k];
  }
  return v;
}

std::vector<MultiIndex> multi_indices_of_order(int n, int order) {
  std::vector<MultiIndex> out;
  std::vector<int> e(static_cast<std::size_t>(n));
  // enumerate compositions of `order` into n parts, lexicographically descending in e[0]
  auto rec = [&](auto&& self, int k, int remaining) -> void {
    if (k == n - 1) {
      e[static_cast<std::size_t>(k)] = remaining;
      out.emplace_back(e);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      e[static_cast<std::size_t>(k)] = v;
      self(self, k + 1, remaining - v);
    }
  };
  if (n >= 1) rec(rec, 0, order);
  return out;
}

}  // namespace focklab
