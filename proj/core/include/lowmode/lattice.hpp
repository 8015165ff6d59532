#pragma once

#include <cmath>
#include <cstdlib>
#include <set>
#include <vector>

#include "lowmode/errors.hpp"

namespace lowmode {

// Two positive, distinct base frequencies. A lattice frequency is the integer
// combination n1*lambda1 + n2*lambda2; identity and all algebra are decided on
// the integer pair, never on the floating value.
struct FrequencyBasis {
  double lambda1 = 1.0;
  double lambda2 = 1.4142135623730951;  // sqrt(2)

  void validate() const {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
      throw NegativeFrequencyError("basis frequencies must be positive");
    if (lambda1 == lambda2)
      throw NegativeFrequencyError("basis frequencies must be distinct");
  }
};

inline bool operator==(const FrequencyBasis& a, const FrequencyBasis& b) {
  return a.lambda1 == b.lambda1 && a.lambda2 == b.lambda2;
}

struct LatticeFrequency {
  int n1 = 0;
  int n2 = 0;

  double value(const FrequencyBasis& b) const {
    return n1 * b.lambda1 + n2 * b.lambda2;
  }
  int order() const { return std::abs(n1) + std::abs(n2); }
  bool is_zero() const { return n1 == 0 && n2 == 0; }
  LatticeFrequency negated() const { return {-n1, -n2}; }
};

inline bool operator==(const LatticeFrequency& a, const LatticeFrequency& b) {
  return a.n1 == b.n1 && a.n2 == b.n2;
}
inline bool operator<(const LatticeFrequency& a, const LatticeFrequency& b) {
  if (a.n1 != b.n1) return a.n1 < b.n1;
  return a.n2 < b.n2;
}
inline LatticeFrequency operator+(const LatticeFrequency& a,
                                  const LatticeFrequency& b) {
  return {a.n1 + b.n1, a.n2 + b.n2};
}
inline LatticeFrequency operator-(const LatticeFrequency& a,
                                  const LatticeFrequency& b) {
  return {a.n1 - b.n1, a.n2 - b.n2};
}
inline LatticeFrequency operator*(int c, const LatticeFrequency& a) {
  return {c * a.n1, c * a.n2};
}

// Canonical nonnegative representative: throws when the combination is
// negative instead of folding silently.
LatticeFrequency make_frequency(int n1, int n2, const FrequencyBasis& b);

// Ordered set of canonical (value >= 0) lattice frequencies over one basis.
class FrequencySet {
 public:
  explicit FrequencySet(const FrequencyBasis& basis) : basis_(basis) {
    basis_.validate();
  }

  const FrequencyBasis& basis() const { return basis_; }

  void insert(const LatticeFrequency& f) {
    if (f.value(basis_) < 0.0)
      throw NegativeFrequencyError("frequency set holds nonnegative values");
    freqs_.insert(f);
  }
  bool contains(const LatticeFrequency& f) const { return freqs_.count(f) > 0; }
  bool contains_all(const FrequencySet& other) const;
  std::size_t size() const { return freqs_.size(); }

  // Dimension of the spanned space: {1} for the zero frequency plus
  // {cos, sin} for each nonzero one.
  std::size_t dimension() const;

  auto begin() const { return freqs_.begin(); }
  auto end() const { return freqs_.end(); }

  std::vector<LatticeFrequency> sorted_by_value() const;

 private:
  FrequencyBasis basis_;
  std::set<LatticeFrequency> freqs_;
};

// The six-frequency control set {0, l1, l2, 2l1, 2l2, l1+l2}; spans an
// 11-dimensional function space.
FrequencySet make_control_space(const FrequencyBasis& b);

// All canonical lattice frequencies of order |n1|+|n2| <= k.
FrequencySet enumerate_lattice(int k, const FrequencyBasis& b);

// Smallest-order lattice frequency with 0 < value < bound; ties at the same
// order resolved toward the smaller value. Search stops at order max_order.
LatticeFrequency smallest_lattice_frequency_below(double bound,
                                                  const FrequencyBasis& b,
                                                  int max_order = 64);

}  // namespace lowmode
