#include "lowmode/saturation.hpp"

#include <optional>

namespace lowmode {

std::vector<TrigPoly> saturation_generators(const FrequencyBasis& b) {
  return {
      TrigPoly::harmonic(b, {1, 0}, 0.0, 1.0),
      TrigPoly::harmonic(b, {1, 0}, 1.0, 0.0),
      TrigPoly::harmonic(b, {0, 1}, 0.0, 1.0),
      TrigPoly::harmonic(b, {0, 1}, 1.0, 0.0),
  };
}

namespace {

TrigPoly symmetric_product(const TrigPoly& xi, const TrigPoly& gen) {
  return tp_multiply(xi, tp_derivative(gen)) +
         tp_multiply(gen, tp_derivative(xi));
}

}  // namespace

FrequencySet convexification_span(const std::vector<TrigPoly>& gens,
                                  const FrequencySet& g) {
  for (const auto& gen : gens) {
    if (!gen.supported_in(g))
      throw SaturationPreconditionError("generator leaves the base span");
    if (!burgers_bilinear(gen).supported_in(g))
      throw SaturationPreconditionError(
          "generator Burgers image leaves the base span");
  }
  FrequencySet out = g;
  for (const auto& gen : gens) {
    for (const auto& lambda : g) {
      std::vector<TrigPoly> basis_fns;
      if (lambda.is_zero()) {
        basis_fns.push_back(TrigPoly::constant(g.basis(), 1.0));
      } else {
        basis_fns.push_back(TrigPoly::harmonic(g.basis(), lambda, 1.0, 0.0));
        basis_fns.push_back(TrigPoly::harmonic(g.basis(), lambda, 0.0, 1.0));
      }
      for (const auto& e : basis_fns) {
        const TrigPoly q = symmetric_product(e, gen);
        for (const auto& [f, t] : q.terms()) out.insert(f);
      }
    }
  }
  return out;
}

SaturationIdentity saturation_decompose(const LatticeFrequency& lambda,
                                        const FrequencyBasis& b) {
  b.validate();
  if (lambda.is_zero())
    throw DivisionByZeroError("zero frequency has no shifted form");
  const int max_order = lambda.order() - 1;

  struct Candidate {
    LatticeFrequency shift;
    LatticeFrequency lp, ldp;
    int lp_order;
    bool lambda1_shift;
  };
  std::vector<Candidate> admissible;
  bool saw_zero_remainder_only = false;

  auto consider = [&](LatticeFrequency s, bool is_l1) {
    const LatticeFrequency lp = lambda - s;
    const LatticeFrequency ldp = lambda - 2 * s;
    if (lp.order() > max_order || ldp.order() > max_order) return;
    if (ldp.is_zero()) {
      saw_zero_remainder_only = true;
      return;
    }
    admissible.push_back({s, lp, ldp, lp.order(), is_l1});
  };
  for (int sign : {1, -1}) consider({sign, 0}, true);
  for (int sign : {1, -1}) consider({0, sign}, false);

  if (admissible.empty()) {
    if (saw_zero_remainder_only)
      throw DivisionByZeroError("every admissible shift leaves a zero remainder");
    throw NotDecomposableError("no shifted pair stays at lower order");
  }

  const Candidate* best = &admissible.front();
  for (const auto& c : admissible) {
    if (c.lambda1_shift != best->lambda1_shift) {
      if (c.lambda1_shift) best = &c;
      continue;
    }
    if (c.lp_order < best->lp_order) best = &c;
  }

  const double lv = lambda.value(b);
  const double rv = best->ldp.value(b);  // signed remainder frequency

  const TrigPoly sin_s = TrigPoly::harmonic(b, best->shift, 0.0, 1.0);
  const TrigPoly cos_s = TrigPoly::harmonic(b, best->shift, 1.0, 0.0);
  const TrigPoly sin_lp = TrigPoly::harmonic(b, best->lp, 0.0, 1.0);
  const TrigPoly sin_r = TrigPoly::harmonic(b, best->ldp, 0.0, 1.0);
  const TrigPoly cos_r = TrigPoly::harmonic(b, best->ldp, 1.0, 0.0);

  SaturationIdentity id{lambda, best->shift, best->lp, best->ldp, TrigPoly(b),
                        TrigPoly(b)};
  id.lambda = lambda;
  id.shift = best->shift;
  id.lambda_prime = best->lp;
  id.lambda_dprime = best->ldp;
  id.sin_rhs = tp_linear(sin_r, symmetric_product(sin_lp, sin_s), rv / lv,
                         2.0 / lv);
  id.cos_rhs = tp_linear(cos_r, symmetric_product(sin_lp, cos_s), -rv / lv,
                         2.0 / lv);
  return id;
}

}  // namespace lowmode
