#include "focklab/family.hpp"

#include <stdexcept>

#include "focklab/rng.hpp"

namespace focklab {

namespace {

// polynomial of degree <= 3 plus two normalized kernels, coefficients from Philox stream 0x6d69
EntireFn random_mixture(double alpha, int n, std::uint64_t seed) {
  PhiloxStream rng(seed, 0x6d69);
  auto coef = [&] { return cplx{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0}; };
  Polynomial p(n);
  for (int order = 0; order <= 3; ++order)
    for (const auto& m : multi_indices_of_order(n, order)) p.add(m, coef() / static_cast<double>(order + 1));
  EntireFn f = EntireFn::polynomial(p);
  for (int j = 0; j < 2; ++j) {
    std::vector<cplx> w(static_cast<std::size_t>(n));
    for (auto& c : w) c = 1.5 * coef();
    f = f + coef() * EntireFn::normalized_kernel(alpha, CPoint(w));
  }
  return f;
}

}  // namespace

TestFamily TestFamily::standard(double alpha, int n, std::uint64_t seed) {
  if (!(alpha > 0.0)) throw std::invalid_argument("TestFamily: alpha must be positive");
  if (n < 1 || n > 2) throw std::invalid_argument("TestFamily: n must be 1 or 2");
  TestFamily fam;
  fam.alpha_ = alpha;
  fam.n_ = n;
  auto add = [&](std::string name, EntireFn f, bool fin, bool inf, std::string note = {}) {
    fam.members_.push_back({std::move(name), std::move(f), fin, inf, std::move(note)});
  };
  add("one", EntireFn::constant(n, 1.0), true, true);
  if (n == 1) {
    add("z", EntireFn::monomial(MultiIndex{1}), true, true);
    add("z^3", EntireFn::monomial(MultiIndex{3}), true, true);
    add("z^6", EntireFn::monomial(MultiIndex{6}), true, true);
    add("K_w", EntireFn::kernel(alpha, CPoint{1.0}), true, true, "w = 1");
    add("k_w", EntireFn::normalized_kernel(alpha, CPoint{cplx{1.0, 0.5}}), true, true, "w = 1+0.5i");
    add("exp_lambda", EntireFn::exp_linear(CPoint{cplx{0.8, -0.3}}), true, true, "lambda = 0.8-0.3i");
  } else {
    add("z1", EntireFn::coordinate(2, 0), true, true);
    add("z1*z2^2", EntireFn::monomial(MultiIndex{1, 2}), true, true);
    add("z1^3*z2^3", EntireFn::monomial(MultiIndex{3, 3}), true, true);
    add("K_w", EntireFn::kernel(alpha, CPoint{1.0, 0.0}), true, true, "w = (1,0)");
    add("k_w", EntireFn::normalized_kernel(alpha, CPoint{cplx{0.5, 0.0}, cplx{0.0, -0.5}}), true, true,
        "w = (0.5,-0.5i)");
    add("exp_lambda", EntireFn::exp_linear(CPoint{cplx{0.5, 0.0}, cplx{0.0, 0.3}}), true, true,
        "lambda = (0.5,0.3i)");
  }
  add("mixture", random_mixture(alpha, n, seed), true, true, "seeded polynomial-kernel mixture");
  if (n == 1) {
    add("expsq_quarter", EntireFn::exp_square(alpha / 4.0), true, true, "e^{(alpha/4) z^2}");
    add("witness", EntireFn::exp_square(alpha / 2.0), false, true,
        "e^{(alpha/2) z^2}: weighted modulus e^{-alpha y^2}");
    add("z_witness", EntireFn::monomial(MultiIndex{1}) * EntireFn::exp_square(alpha / 2.0), false, false,
        "z e^{(alpha/2) z^2}: weighted modulus |z| e^{-alpha y^2}");
  }
  return fam;
}

const FamilyMember& TestFamily::get(const std::string& name) const {
  for (const auto& m : members_)
    if (m.name == name) return m;
  throw std::out_of_range("unknown family member: " + name);
}

std::vector<std::string> TestFamily::names() const {
  std::vector<std::string> out;
  for (const auto& m : members_) out.push_back(m.name);
  return out;
}

std::vector<FamilyMember> TestFamily::bounded() const {
  std::vector<FamilyMember> out;
  for (const auto& m : members_)
    if (m.in_infinity) out.push_back(m);
  return out;
}

}  // namespace focklab
