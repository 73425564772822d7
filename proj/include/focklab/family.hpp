#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "focklab/entire_fn.hpp"

namespace focklab {

// A test function with independently known memberships.
struct FamilyMember {
  std::string name;
  EntireFn f;
  bool in_finite_p = true;  // f in F^p_alpha for every finite p > 0
  bool in_infinity = true;  // f in F^inf_alpha
  std::string note;
  bool memberships_known = true;  // false for user-supplied functions

  bool member_of(double p) const { return p == std::numeric_limits<double>::infinity() ? in_infinity : in_finite_p; }
};

class TestFamily {
 public:
  // Constants, monomials, kernels, e^{lambda.z}, a seeded polynomial-kernel mixture and, for
  // n = 1, the quadratic-exponential members e^{(alpha/4) z^2}, e^{(alpha/2) z^2} and
  // z e^{(alpha/2) z^2}.
  static TestFamily standard(double alpha, int n, std::uint64_t seed = 0);

  const std::vector<FamilyMember>& members() const { return members_; }
  const FamilyMember& get(const std::string& name) const;
  std::vector<std::string> names() const;
  // subset in F^inf_alpha, in family order
  std::vector<FamilyMember> bounded() const;

  double alpha() const { return alpha_; }
  int dim() const { return n_; }

 private:
  double alpha_ = 1.0;
  int n_ = 1;
  std::vector<FamilyMember> members_;
};

}  // namespace focklab
