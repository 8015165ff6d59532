#pragma once

#include <cstdint>
#include <vector>

#include "lowmode/saturation.hpp"

namespace lowmode {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / den; }
};

// Convex replacement of one control vector: eta1 = eta - sum_j alpha_j
// (B(. + zeta_j)-corrections), with weights in equal +-pairs so first-order
// terms cancel and only the u-independent residual eps^2 sum_j B(xi_j)
// survives. weights sum to 1 exactly as rationals; zetas[j+m] = -zetas[j].
struct ConvexDecomposition {
  TrigPoly eta;                    // replacement control, valued in G
  std::vector<Rational> weights;   // size 2m, each 1/(2m)
  std::vector<TrigPoly> zetas;     // size 2m, G-valued
  double epsilon = 1.0;            // largest power of 1/2 meeting nu
  double residual_bound = 0.0;     // sup-norm bound of the exact residual

  // Pieces of the linear representation, kept for verification:
  TrigPoly eta_tilde;              // G-valued remainder
  std::vector<TrigPoly> xis;       // per used generator ray
  std::vector<TrigPoly> gens;      // the matching unit rays
  TrigPoly residual_poly;          // eps^2 sum_j B(xi_j), exact

  ConvexDecomposition(const FrequencyBasis& b)
      : eta(b), eta_tilde(b), residual_poly(b) {}
};

// Decomposes eta1 (valued in the convexification span of (gens, g)) into the
// averaged form above. The linear representation is one minimum-norm
// least-squares fit across all generator rays at once, so out-of-g
// by-products of different rays may cancel each other. Throws NotInSpan when
// a leftover part survives.
ConvexDecomposition convex_decompose(const TrigPoly& eta1, double nu,
                                      const std::vector<TrigPoly>& gens,
                                      const FrequencySet& g);

// Control of the averaged equation: eta - sum_j alpha_j B(zeta_j). Running the
// plain equation with this control gives the fast-oscillation limit.
TrigPoly averaged_control(const ConvexDecomposition& d);

}  // namespace lowmode
