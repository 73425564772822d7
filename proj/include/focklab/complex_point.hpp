#pragma once

#include <compare>
#include <complex>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace focklab {

using cplx = std::complex<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws DimensionError unless a == b.
void require_same_dim(int a, int b, const char* what);

// A point of C^n. Immutable once built.
class CPoint {
 public:
  CPoint() = default;
  explicit CPoint(std::vector<cplx> coords);
  CPoint(std::initializer_list<cplx> coords);

  static CPoint zero(int n);
  // Embeds a scalar as (value, 0, ..., 0).
  static CPoint axis(int n, cplx value, int k = 0);

  int dim() const { return static_cast<int>(coords_.size()); }
  const cplx& operator[](int k) const { return coords_[static_cast<std::size_t>(k)]; }
  std::span<const cplx> coords() const { return coords_; }

  double norm2() const;
  double norm() const;

  // z . conj(u) = sum_k z_k conj(u_k)
  cplx dot_conj(const CPoint& u) const;
  // a . z = sum_k a_k z_k (no conjugation)
  cplx dot(const CPoint& z) const;

  CPoint conj() const;
  CPoint with(int k, cplx value) const;

  friend CPoint operator+(const CPoint& a, const CPoint& b);
  friend CPoint operator-(const CPoint& a, const CPoint& b);
  friend CPoint operator*(cplx s, const CPoint& a);
  friend bool operator==(const CPoint& a, const CPoint& b) = default;

  std::string str() const;

 private:
  std::vector<cplx> coords_;
};

// n-tuple of non-negative integers.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  static MultiIndex zero(int n);
  static MultiIndex unit(int n, int k);

  int dim() const { return static_cast<int>(exps_.size()); }
  int operator[](int k) const { return exps_[static_cast<std::size_t>(k)]; }
  std::span<const int> exponents() const { return exps_; }

  int order() const;
  // log(m_1! ... m_n!)
  double log_factorial() const;
  // true iff every component of *this is >= the matching component of other
  bool dominates(const MultiIndex& other) const;

  MultiIndex with(int k, int value) const;
  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);

  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) = default;
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;

  // z^m
  cplx monomial(const CPoint& z) const;

 private:
  std::vector<int> exps_;
};

// All multi-indices of dimension n and total order exactly `order`, lexicographic.
std::vector<MultiIndex> multi_indices_of_order(int n, int order);

}  // namespace focklab
