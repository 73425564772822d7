#include "focklab/entire_fn.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace focklab {

Polynomial::Polynomial(int n) : n_(n) {
  if (n < 1) throw DimensionError("Polynomial: dimension must be >= 1");
}

Polynomial Polynomial::constant(int n, cplx c) {
  Polynomial p(n);
  p.add(MultiIndex::zero(n), c);
  return p;
}

Polynomial Polynomial::monomial(const MultiIndex& m, cplx c) {
  Polynomial p(m.dim());
  p.add(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first.order() == 0);
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : coeffs_) d = std::max(d, m.order());
  return d;
}

int Polynomial::degree_in(int k) const {
  int d = -1;
  for (const auto& [m, c] : coeffs_) d = std::max(d, m[k]);
  return d;
}

cplx Polynomial::coeff(const MultiIndex& m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? cplx{0.0} : it->second;
}

cplx Polynomial::eval(const CPoint& z) const {
  require_same_dim(n_, z.dim(), "Polynomial::eval");
  if (coeffs_.empty()) return 0.0;
  if (n_ == 1) {
    // Horner over the sparse exponent list (descending)
    cplx acc = 0.0;
    int prev = -1;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      int e = it->first[0];
      if (prev >= 0) {
        for (int j = e; j < prev; ++j) acc *= z[0];
      }
      acc += it->second;
      prev = e;
    }
    for (int j = 0; j < prev; ++j) acc *= z[0];
    return acc;
  }
  cplx s = 0.0;
  for (const auto& [m, c] : coeffs_) s += c * m.monomial(z);
  return s;
}

void Polynomial::add(const MultiIndex& m, cplx c) {
  require_same_dim(n_, m.dim(), "Polynomial::add");
  if (c == 0.0) return;
  auto [it, inserted] = coeffs_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) coeffs_.erase(it);
  }
}

void Polynomial::prune(double tol) {
  std::erase_if(coeffs_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
}

Polynomial Polynomial::derivative(int k) const {
  if (k < 0 || k >= n_) throw std::out_of_range("Polynomial::derivative: coordinate index");
  Polynomial d(n_);
  for (const auto& [m, c] : coeffs_) {
    if (m[k] == 0) continue;
    d.add(m.with(k, m[k] - 1), c * static_cast<double>(m[k]));
  }
  return d;
}

Polynomial Polynomial::times_coordinate(int k) const {
  Polynomial r(n_);
  for (const auto& [m, c] : coeffs_) r.add(m.with(k, m[k] + 1), c);
  return r;
}

Polynomial Polynomial::truncated(int max_degree) const {
  Polynomial r(n_);
  for (const auto& [m, c] : coeffs_) {
    if (m.order() <= max_degree) r.add(m, c);
  }
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_dim(a.n_, b.n_, "Polynomial +");
  Polynomial r = a;
  for (const auto& [m, c] : b.coeffs_) r.add(m, c);
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_dim(a.n_, b.n_, "Polynomial *");
  Polynomial r(a.n_);
  for (const auto& [ma, ca] : a.coeffs_) {
    for (const auto& [mb, cb] : b.coeffs_) r.add(ma + mb, ca * cb);
  }
  return r;
}

Polynomial operator*(cplx s, const Polynomial& a) {
  Polynomial r(a.n_);
  if (s == 0.0) return r;
  for (const auto& [m, c] : a.coeffs_) r.add(m, s * c);
  return r;
}

bool Term::has_linear() const {
  return std::any_of(linear.begin(), linear.end(), [](cplx a) { return a != 0.0; });
}

cplx Term::exponent(const CPoint& z) const {
  cplx e = 0.0;
  for (int k = 0; k < z.dim(); ++k) e += linear[static_cast<std::size_t>(k)] * z[k];
  if (quadratic != 0.0) e += quadratic * z[0] * z[0];
  return e;
}

namespace {

auto exponent_key(const Term& t) {
  std::vector<double> key;
  key.reserve(2 * t.linear.size() + 2);
  key.push_back(t.quadratic.real());
  key.push_back(t.quadratic.imag());
  for (cplx a : t.linear) {
    key.push_back(a.real());
    key.push_back(a.imag());
  }
  return key;
}

}  // namespace

EntireFn::EntireFn(int n) : n_(n) {
  if (n < 1) throw DimensionError("EntireFn: dimension must be >= 1");
}

EntireFn::EntireFn(int n, std::vector<Term> terms) : EntireFn(n) {
  for (auto& t : terms) {
    require_same_dim(n, t.poly.dim(), "EntireFn term polynomial");
    if (t.linear.empty()) t.linear.assign(static_cast<std::size_t>(n), 0.0);
    require_same_dim(n, static_cast<int>(t.linear.size()), "EntireFn term linear form");
    if (t.quadratic != 0.0 && n != 1) {
      throw ClosureError("EntireFn: quadratic exponent terms require n = 1");
    }
  }
  terms_ = std::move(terms);
  canonicalize();
}

void EntireFn::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return exponent_key(a) < exponent_key(b); });
  std::vector<Term> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().same_exponent(t)) {
      merged.back().poly = merged.back().poly + t.poly;
    } else {
      merged.push_back(std::move(t));
    }
  }
  for (auto& t : merged) t.poly.prune(kDropTolerance);
  std::erase_if(merged, [](const Term& t) { return t.poly.is_zero(); });
  terms_ = std::move(merged);
}

EntireFn EntireFn::constant(int n, cplx c) { return polynomial(Polynomial::constant(n, c)); }

EntireFn EntireFn::polynomial(Polynomial p) {
  int n = p.dim();
  return EntireFn(n, {Term{std::move(p), {}, 0.0}});
}

EntireFn EntireFn::monomial(const MultiIndex& m, cplx c) {
  return polynomial(Polynomial::monomial(m, c));
}

EntireFn EntireFn::coordinate(int n, int k) { return monomial(MultiIndex::unit(n, k)); }

EntireFn EntireFn::kernel(double alpha, const CPoint& w) {
  return exp_linear(cplx{alpha} * w.conj());
}

EntireFn EntireFn::normalized_kernel(double alpha, const CPoint& w) {
  return exp_linear(cplx{alpha} * w.conj(), std::exp(-0.5 * alpha * w.norm2()));
}

EntireFn EntireFn::exp_linear(const CPoint& a, cplx c) {
  int n = a.dim();
  return EntireFn(n, {Term{Polynomial::constant(n, c), {a.coords().begin(), a.coords().end()}, 0.0}});
}

EntireFn EntireFn::exp_square(cplx gamma, cplx c) {
  return EntireFn(1, {Term{Polynomial::constant(1, c), {0.0}, gamma}});
}

bool EntireFn::is_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return !t.has_linear() && !t.has_quadratic(); });
}

bool EntireFn::has_quadratic() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.has_quadratic(); });
}

cplx EntireFn::operator()(const CPoint& z) const {
  require_same_dim(n_, z.dim(), "EntireFn eval");
  cplx s = 0.0;
  for (const auto& t : terms_) {
    cplx p = t.poly.eval(z);
    if (t.has_linear() || t.has_quadratic()) p *= std::exp(t.exponent(z));
    s += p;
  }
  return s;
}

LogComplex EntireFn::eval_log(const CPoint& z) const {
  require_same_dim(n_, z.dim(), "EntireFn eval_log");
  if (terms_.size() == 1) {
    const auto& t = terms_.front();
    cplx e = t.exponent(z);
    return LogComplex::from(t.poly.eval(z)) * LogComplex::from_parts(e.real(), e.imag());
  }
  std::vector<LogComplex> parts;
  parts.reserve(terms_.size());
  for (const auto& t : terms_) {
    cplx e = t.exponent(z);
    parts.push_back(LogComplex::from(t.poly.eval(z)) * LogComplex::from_parts(e.real(), e.imag()));
  }
  return log_sum(parts);
}

EntireFn operator+(const EntireFn& f, const EntireFn& g) {
  require_same_dim(f.n_, g.n_, "EntireFn +");
  std::vector<Term> terms = f.terms_;
  terms.insert(terms.end(), g.terms_.begin(), g.terms_.end());
  return EntireFn(f.n_, std::move(terms));
}

EntireFn operator-(const EntireFn& f, const EntireFn& g) { return f + cplx{-1.0} * g; }

EntireFn operator*(const EntireFn& f, const EntireFn& g) {
  require_same_dim(f.n_, g.n_, "EntireFn *");
  std::vector<Term> terms;
  terms.reserve(f.terms_.size() * g.terms_.size());
  for (const auto& a : f.terms_) {
    for (const auto& b : g.terms_) {
      if (a.has_quadratic() && b.has_quadratic()) {
        throw ClosureError("EntireFn: product of two quadratic-exponent terms is not supported");
      }
      Term t{a.poly * b.poly, a.linear, a.quadratic + b.quadratic};
      for (std::size_t k = 0; k < t.linear.size(); ++k) t.linear[k] += b.linear[k];
      terms.push_back(std::move(t));
    }
  }
  return EntireFn(f.n_, std::move(terms));
}

EntireFn operator*(cplx s, const EntireFn& f) {
  std::vector<Term> terms = f.terms_;
  for (auto& t : terms) t.poly = s * t.poly;
  return EntireFn(f.n_, std::move(terms));
}

cplx eval(const EntireFn& f, const CPoint& z) { return f(z); }

LogComplex eval_weighted(const EntireFn& f, const CPoint& z, double alpha) {
  return f.eval_log(z).scaled(-0.5 * alpha * z.norm2());
}

EntireFn arithmetic(const EntireFn& f, const EntireFn& g, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return f + g;
    case ArithOp::multiply:
      return f * g;
    case ArithOp::scale: {
      require_same_dim(f.dim(), g.dim(), "arithmetic scale");
      if (!g.is_polynomial() || g.terms().size() > 1 ||
          (!g.is_zero() && !g.terms().front().poly.is_constant())) {
        throw std::invalid_argument("arithmetic scale: second operand must be a constant");
      }
      cplx c = g.is_zero() ? cplx{0.0} : g.terms().front().poly.coeff(MultiIndex::zero(g.dim()));
      return c * f;
    }
  }
  throw std::invalid_argument("arithmetic: unknown op");
}

}  // namespace focklab
