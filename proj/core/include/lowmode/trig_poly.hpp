#pragma once

#include <map>
#include <vector>

#include "lowmode/lattice.hpp"

namespace lowmode {

// Finite combination sum_f [ c_f cos(v_f x) + s_f sin(v_f x) ] over canonical
// lattice frequencies. All structural operations are exact on the integer
// pairs; only the coefficients are floating. Negative combinations fold
// through cos(-t) = cos(t), sin(-t) = -sin(t); the zero frequency never
// carries a sine coefficient.
class TrigPoly {
 public:
  struct Coeff {
    double c = 0.0;  // cosine coefficient
    double s = 0.0;  // sine coefficient
  };

  explicit TrigPoly(const FrequencyBasis& basis) : basis_(basis) {
    basis_.validate();
  }

  static TrigPoly constant(const FrequencyBasis& b, double v);
  // c*cos(f x) + s*sin(f x); f may fold.
  static TrigPoly harmonic(const FrequencyBasis& b, LatticeFrequency f,
                           double c, double s);

  const FrequencyBasis& basis() const { return basis_; }
  const std::map<LatticeFrequency, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  Coeff coeff(const LatticeFrequency& f) const;

  // Accumulates c*cos + s*sin at f, folding negative-value frequencies.
  void add_term(LatticeFrequency f, double c, double s);

  // Drops coefficients below 1e-14 times the largest magnitude present.
  void canonicalize();

  double max_abs_coeff() const;
  // sum_f sqrt(c^2 + s^2): an upper bound for the sup norm, exact for a
  // single-frequency poly.
  double sup_bound() const;

  double evaluate(double x) const;
  std::vector<double> evaluate(const std::vector<double>& xs) const;

  FrequencySet frequencies() const;
  bool supported_in(const FrequencySet& g) const;
  TrigPoly restricted_to(const FrequencySet& g) const;
  TrigPoly outside(const FrequencySet& g) const;

  TrigPoly& operator+=(const TrigPoly& other);
  TrigPoly& operator*=(double c);

 private:
  FrequencyBasis basis_;
  std::map<LatticeFrequency, Coeff> terms_;
};

inline void require_same_basis(const FrequencyBasis& a,
                               const FrequencyBasis& b) {
  if (!(a == b))
    throw WindowMismatchError("operands use different frequency bases");
}
inline void require_same_basis(const TrigPoly& p, const TrigPoly& q) {
  require_same_basis(p.basis(), q.basis());
}

// c1*p + c2*q (shared basis required).
TrigPoly tp_linear(const TrigPoly& p, const TrigPoly& q, double c1, double c2);
TrigPoly tp_scale(const TrigPoly& p, double c);
inline TrigPoly operator+(const TrigPoly& p, const TrigPoly& q) {
  return tp_linear(p, q, 1.0, 1.0);
}
inline TrigPoly operator-(const TrigPoly& p, const TrigPoly& q) {
  return tp_linear(p, q, 1.0, -1.0);
}
inline TrigPoly operator*(double c, const TrigPoly& p) { return tp_scale(p, c); }

// d/dx: exact product-to-sum stays inside the lattice.
TrigPoly tp_derivative(const TrigPoly& p);
TrigPoly tp_multiply(const TrigPoly& p, const TrigPoly& q);

// B(p) = p * dp/dx.
TrigPoly burgers_bilinear(const TrigPoly& p);

}  // namespace lowmode
