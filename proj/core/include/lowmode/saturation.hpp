#pragma once

#include <vector>

#include "lowmode/trig_poly.hpp"

namespace lowmode {

// Unit generator rays: sin(l1 x), cos(l1 x), sin(l2 x), cos(l2 x). The order
// is load-bearing: the convex decomposition assigns mass to rays greedily in
// this sequence.
std::vector<TrigPoly> saturation_generators(const FrequencyBasis& b);

// Frequency support of span{ eta + xi d/dx(gen) + gen d/dx(xi) } with eta and
// xi ranging over the space spanned by g and gen over the generator rays.
// Requires each generator and its Burgers image to stay inside g.
FrequencySet convexification_span(const std::vector<TrigPoly>& gens,
                                  const FrequencySet& g);

// One ladder step: lambda expressed through a shifted pair
// lambda' = lambda - s, lambda'' = lambda - 2s with s one of the basis
// frequencies (either sign). Both right-hand sides expand to products of
// strictly lower-order harmonics plus a lower-order remainder; the expansion
// is exact, so lhs - rhs cancels to the zero polynomial.
struct SaturationIdentity {
  LatticeFrequency lambda;
  LatticeFrequency shift;          // (+-1, 0) or (0, +-1)
  LatticeFrequency lambda_prime;   // lambda - shift (unfolded pair)
  LatticeFrequency lambda_dprime;  // lambda - 2*shift (unfolded pair)
  TrigPoly sin_rhs;                // equals sin(lambda x)
  TrigPoly cos_rhs;                // equals cos(lambda x)
};

// Admissible shifts keep the folded lambda' and lambda'' at order
// <= order(lambda) - 1; lambda1-shifts are preferred, ties broken by the
// smaller folded order of lambda'. Throws DivisionByZero when lambda is zero
// or every admissible shift leaves lambda'' = 0 (the cosine form divides the
// remainder out); NotDecomposable when no admissible shift exists.
SaturationIdentity saturation_decompose(const LatticeFrequency& lambda,
                                        const FrequencyBasis& b);

}  // namespace lowmode
