#include "focklab/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace focklab {

GaussianMeasure::GaussianMeasure(double alpha_, int n_) : alpha(alpha_), n(n_) {
  if (!(alpha > 0.0)) throw std::invalid_argument("GaussianMeasure: alpha must be positive");
  if (n < 1) throw DimensionError("GaussianMeasure: n must be >= 1");
}

double GaussianMeasure::log_density(const CPoint& z) const {
  return n * std::log(alpha / std::numbers::pi) - alpha * z.norm2();
}

GaussRule1D gauss_from_recurrence(const std::vector<double>& a, const std::vector<double>& b, double mass) {
  const int N = static_cast<int>(a.size());
  if (N < 1 || static_cast<int>(b.size()) < N) throw std::invalid_argument("gauss_from_recurrence: sizes");

  Eigen::VectorXd diag(N);
  Eigen::VectorXd sub(std::max(N - 1, 1));
  for (int k = 0; k < N; ++k) diag(k) = a[static_cast<std::size_t>(k)];
  for (int k = 1; k < N; ++k) sub(k - 1) = b[static_cast<std::size_t>(k)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(N - 1), Eigen::EigenvaluesOnly);

  GaussRule1D rule;
  rule.nodes.resize(static_cast<std::size_t>(N));
  rule.weights.resize(static_cast<std::size_t>(N));
  const double q0 = 1.0 / std::sqrt(mass);

  for (int i = 0; i < N; ++i) {
    double t = solver.eigenvalues()(i);
    double christoffel = 0.0;
    for (int iter = 0; iter < 8; ++iter) {
      // orthonormal q_0..q_{N-1}; r = b_N q_N left unnormalized
      double q_prev = 0.0, q = q0, dq_prev = 0.0, dq = 0.0;
      double sum_sq = q * q;
      for (int k = 0; k < N - 1; ++k) {
        double bk = k ? b[static_cast<std::size_t>(k)] : 0.0;
        double bk1 = b[static_cast<std::size_t>(k + 1)];
        double qn = ((t - a[static_cast<std::size_t>(k)]) * q - bk * q_prev) / bk1;
        double dqn = (q + (t - a[static_cast<std::size_t>(k)]) * dq - bk * dq_prev) / bk1;
        q_prev = q;
        q = qn;
        dq_prev = dq;
        dq = dqn;
        sum_sq += q * q;
      }
      double bl = N > 1 ? b[static_cast<std::size_t>(N - 1)] : 0.0;
      double r = (t - a[static_cast<std::size_t>(N - 1)]) * q - bl * q_prev;
      double dr = q + (t - a[static_cast<std::size_t>(N - 1)]) * dq - bl * dq_prev;
      christoffel = sum_sq;
      if (dr == 0.0) break;
      double step = r / dr;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) break;
      t -= step;
    }
    rule.nodes[static_cast<std::size_t>(i)] = t;
    rule.weights[static_cast<std::size_t>(i)] = 1.0 / christoffel;
  }
  return rule;
}

namespace {
std::mutex cache_mutex;
}  // namespace

const GaussRule1D& gauss_legendre_1d(int order) {
  static std::map<int, GaussRule1D> cache;
  std::lock_guard lock(cache_mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  std::vector<double> a(static_cast<std::size_t>(order), 0.0), b(static_cast<std::size_t>(order), 0.0);
  for (int k = 1; k < order; ++k) {
    double kk = static_cast<double>(k) * k;
    b[static_cast<std::size_t>(k)] = std::sqrt(kk / (4.0 * kk - 1.0));
  }
  return cache.emplace(order, gauss_from_recurrence(a, b, 2.0)).first->second;
}

const GaussRule1D& gauss_hermite_1d(int order) {
  static std::map<int, GaussRule1D> cache;
  {
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
  }
  std::vector<double> a(static_cast<std::size_t>(order), 0.0), b(static_cast<std::size_t>(order), 0.0);
  for (int k = 1; k < order; ++k) b[static_cast<std::size_t>(k)] = std::sqrt(0.5 * k);
  GaussRule1D rule = gauss_from_recurrence(a, b, std::sqrt(std::numbers::pi));
  std::lock_guard lock(cache_mutex);
  return cache.emplace(order, std::move(rule)).first->second;
}

const GaussRule1D& half_range_hermite_1d(int order) {
  static std::map<int, GaussRule1D> cache;
  {
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
  }
  // discretize t e^{-t^2} dt on [0, T] with composite 20-point Gauss-Legendre panels
  const GaussRule1D& gl = gauss_legendre_1d(20);
  const double T = 2.0 * std::sqrt(static_cast<double>(order)) + 12.0;
  const double h = 0.1;
  const int panels = static_cast<int>(std::ceil(T / h));
  std::vector<double> t, w;
  t.reserve(static_cast<std::size_t>(panels) * gl.nodes.size());
  w.reserve(t.capacity());
  for (int p = 0; p < panels; ++p) {
    double lo = p * h;
    for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
      double x = lo + 0.5 * h * (gl.nodes[j] + 1.0);
      t.push_back(x);
      w.push_back(0.5 * h * gl.weights[j] * x * std::exp(-x * x));
    }
  }

  // discretized Stieltjes procedure
  const std::size_t M = t.size();
  std::vector<double> a(static_cast<std::size_t>(order)), b(static_cast<std::size_t>(order), 0.0);
  std::vector<double> q(M), q_prev(M, 0.0), r(M);
  double mass = 0.0;
  for (double x : w) mass += x;
  for (auto& x : q) x = 1.0 / std::sqrt(mass);
  for (int k = 0; k < order; ++k) {
    double ak = 0.0;
    for (std::size_t i = 0; i < M; ++i) ak += w[i] * t[i] * q[i] * q[i];
    a[static_cast<std::size_t>(k)] = ak;
    if (k + 1 == order) break;
    double bk = b[static_cast<std::size_t>(k)];
    double norm2 = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      r[i] = (t[i] - ak) * q[i] - bk * q_prev[i];
      norm2 += w[i] * r[i] * r[i];
    }
    double bk1 = std::sqrt(norm2);
    b[static_cast<std::size_t>(k + 1)] = bk1;
    for (std::size_t i = 0; i < M; ++i) {
      q_prev[i] = q[i];
      q[i] = r[i] / bk1;
    }
  }
  // exact mass is 1/2
  GaussRule1D rule = gauss_from_recurrence(a, b, 0.5);
  std::lock_guard lock(cache_mutex);
  return cache.emplace(order, std::move(rule)).first->second;
}

std::string to_string(RuleKind kind) {
  return kind == RuleKind::gauss_hermite ? "quad-gh" : "quad-polar";
}

QuadratureRule::QuadratureRule(GaussianMeasure measure, RuleKind kind, int order, std::vector<CoordRule> coords)
    : measure_(measure), kind_(kind), order_(order), coords_(std::move(coords)) {
  require_same_dim(measure_.n, static_cast<int>(coords_.size()), "QuadratureRule");
  for (const auto& c : coords_) size_ *= c.nodes.size();
  centers_.assign(coords_.size(), 0.0);
}

QuadratureRule QuadratureRule::with_order(int order) const {
  QuadratureRule r = make_rule(measure_, kind_, order);
  for (int k = 0; k < measure_.n; ++k) {
    if (centers_[static_cast<std::size_t>(k)] != 0.0) r = r.shifted_coordinate(k, centers_[static_cast<std::size_t>(k)]);
  }
  return r;
}

double QuadratureRule::node_into(std::size_t i, std::vector<cplx>& out) const {
  out.resize(coords_.size());
  double w = 1.0;
  for (std::size_t k = coords_.size(); k-- > 0;) {
    const auto& c = coords_[k];
    std::size_t j = i % c.nodes.size();
    i /= c.nodes.size();
    out[k] = c.nodes[j];
    w *= c.weights[j];
  }
  return w;
}

CPoint QuadratureRule::node(std::size_t i) const {
  std::vector<cplx> buf;
  node_into(i, buf);
  return CPoint(std::move(buf));
}

double QuadratureRule::weight(std::size_t i) const {
  std::vector<cplx> buf;
  return node_into(i, buf);
}

double QuadratureRule::weight_sum() const {
  double s = 1.0;
  for (const auto& c : coords_) {
    double sc = 0.0;
    for (double w : c.weights) sc += w;
    s *= sc;
  }
  return s;
}

QuadratureRule QuadratureRule::shifted_coordinate(int k, cplx center) const {
  std::vector<CoordRule> coords = coords_;
  auto& c = coords.at(static_cast<std::size_t>(k));
  const double a = measure_.alpha;
  for (std::size_t j = 0; j < c.nodes.size(); ++j) {
    cplx x = c.nodes[j];
    c.weights[j] *= std::exp(-a * (2.0 * (x * std::conj(center)).real() + std::norm(center)));
    c.nodes[j] = x + center;
  }
  QuadratureRule r(measure_, kind_, order_, std::move(coords));
  r.centers_ = centers_;
  r.centers_[static_cast<std::size_t>(k)] += center;
  return r;
}

QuadratureRule QuadratureRule::shifted(const CPoint& center) const {
  require_same_dim(measure_.n, center.dim(), "QuadratureRule::shifted");
  QuadratureRule r = *this;
  for (int k = 0; k < center.dim(); ++k) {
    if (center[k] != 0.0) r = r.shifted_coordinate(k, center[k]);
  }
  return r;
}

QuadratureRule gauss_hermite_rule(const GaussianMeasure& measure, int order) {
  if (order < 4 || order > 128) throw std::out_of_range("gauss_hermite_rule: order must lie in [4, 128]");
  if (measure.n > 2) throw std::out_of_range("gauss_hermite_rule: n must be <= 2");
  const GaussRule1D& gh = gauss_hermite_1d(order);
  const double scale = 1.0 / std::sqrt(measure.alpha);
  CoordRule c;
  c.nodes.reserve(static_cast<std::size_t>(order) * order);
  c.weights.reserve(c.nodes.capacity());
  for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
    for (std::size_t j = 0; j < gh.nodes.size(); ++j) {
      c.nodes.emplace_back(scale * gh.nodes[i], scale * gh.nodes[j]);
      c.weights.push_back(gh.weights[i] * gh.weights[j] / std::numbers::pi);
    }
  }
  return QuadratureRule(measure, RuleKind::gauss_hermite, order,
                        std::vector<CoordRule>(static_cast<std::size_t>(measure.n), c));
}

QuadratureRule polar_rule(const GaussianMeasure& measure, int order) {
  if (order < 4 || order > 128) throw std::out_of_range("polar_rule: order must lie in [4, 128]");
  if (measure.n > 2) throw std::out_of_range("polar_rule: n must be <= 2");
  const GaussRule1D& hr = half_range_hermite_1d(order);
  const int angles = 2 * order;
  const double scale = 1.0 / std::sqrt(measure.alpha);
  CoordRule c;
  c.nodes.reserve(hr.nodes.size() * static_cast<std::size_t>(angles));
  c.weights.reserve(c.nodes.capacity());
  for (std::size_t i = 0; i < hr.nodes.size(); ++i) {
    for (int j = 0; j < angles; ++j) {
      double theta = 2.0 * std::numbers::pi * (j + 0.5) / angles;
      c.nodes.push_back(std::polar(scale * hr.nodes[i], theta));
      c.weights.push_back(hr.weights[i] * 2.0 / angles);
    }
  }
  return QuadratureRule(measure, RuleKind::polar, order,
                        std::vector<CoordRule>(static_cast<std::size_t>(measure.n), c));
}

QuadratureRule make_rule(const GaussianMeasure& measure, RuleKind kind, int order) {
  return kind == RuleKind::gauss_hermite ? gauss_hermite_rule(measure, order) : polar_rule(measure, order);
}

int default_order(int n) { return n <= 1 ? 64 : 24; }

}  // namespace focklab
