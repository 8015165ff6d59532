#include "lowmode/lattice.hpp"

#include <algorithm>

namespace lowmode {

LatticeFrequency make_frequency(int n1, int n2, const FrequencyBasis& b) {
  b.validate();
  LatticeFrequency f{n1, n2};
  if (f.value(b) < 0.0)
    throw NegativeFrequencyError("combination " + std::to_string(n1) + "*l1 + " +
                                 std::to_string(n2) + "*l2 is negative");
  return f;
}

bool FrequencySet::contains_all(const FrequencySet& other) const {
  for (const auto& f : other)
    if (!contains(f)) return false;
  return true;
}

std::size_t FrequencySet::dimension() const {
  std::size_t dim = 0;
  for (const auto& f : freqs_) dim += f.is_zero() ? 1 : 2;
  return dim;
}

std::vector<LatticeFrequency> FrequencySet::sorted_by_value() const {
  std::vector<LatticeFrequency> out(freqs_.begin(), freqs_.end());
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    double va = a.value(basis_), vb = b.value(basis_);
    if (va != vb) return va < vb;
    return a < b;
  });
  return out;
}

FrequencySet make_control_space(const FrequencyBasis& b) {
  FrequencySet s(b);
  s.insert({0, 0});
  s.insert({1, 0});
  s.insert({0, 1});
  s.insert({2, 0});
  s.insert({0, 2});
  s.insert({1, 1});
  return s;
}

FrequencySet enumerate_lattice(int k, const FrequencyBasis& b) {
  FrequencySet s(b);
  for (int n1 = -k; n1 <= k; ++n1) {
    for (int n2 = -(k - std::abs(n1)); std::abs(n1) + std::abs(n2) <= k; ++n2) {
      LatticeFrequency f{n1, n2};
      if (f.value(b) >= 0.0) s.insert(f);
    }
  }
  return s;
}

LatticeFrequency smallest_lattice_frequency_below(double bound,
                                                  const FrequencyBasis& b,
                                                  int max_order) {
  b.validate();
  for (int k = 1; k <= max_order; ++k) {
    bool found = false;
    LatticeFrequency best{0, 0};
    double best_value = bound;
    for (int n1 = -k; n1 <= k; ++n1) {
      int n2a = k - std::abs(n1);
      for (int n2 : {n2a, -n2a}) {
        LatticeFrequency f{n1, n2};
        if (f.order() != k) continue;
        double v = f.value(b);
        if (v <= 0.0 || v >= bound) continue;
        if (!found || v < best_value) {
          found = true;
          best = f;
          best_value = v;
        }
      }
    }
    if (found) return best;
  }
  throw NotDecomposableError("no lattice frequency below " +
                             std::to_string(bound) + " within order " +
                             std::to_string(max_order));
}

}  // namespace lowmode
