#include "lowmode/trig_poly.hpp"

#include <algorithm>
#include <cmath>

namespace lowmode {

namespace {
constexpr double kDropRel = 1e-14;
}  // namespace

TrigPoly TrigPoly::constant(const FrequencyBasis& b, double v) {
  TrigPoly p(b);
  p.add_term({0, 0}, v, 0.0);
  p.canonicalize();
  return p;
}

TrigPoly TrigPoly::harmonic(const FrequencyBasis& b, LatticeFrequency f,
                            double c, double s) {
  TrigPoly p(b);
  p.add_term(f, c, s);
  p.canonicalize();
  return p;
}

TrigPoly::Coeff TrigPoly::coeff(const LatticeFrequency& f) const {
  auto it = terms_.find(f);
  return it == terms_.end() ? Coeff{} : it->second;
}

void TrigPoly::add_term(LatticeFrequency f, double c, double s) {
  if (f.value(basis_) < 0.0) {
    f = f.negated();
    s = -s;
  }
  if (f.is_zero()) s = 0.0;  // sin(0 x) contributes nothing
  if (c == 0.0 && s == 0.0) return;
  Coeff& t = terms_[f];
  t.c += c;
  t.s += s;
}

void TrigPoly::canonicalize() {
  double m = max_abs_coeff();
  if (m == 0.0) {
    terms_.clear();
    return;
  }
  const double drop = kDropRel * m;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second.c) < drop) it->second.c = 0.0;
    if (std::abs(it->second.s) < drop) it->second.s = 0.0;
    if (it->second.c == 0.0 && it->second.s == 0.0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

double TrigPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [f, t] : terms_)
    m = std::max(m, std::max(std::abs(t.c), std::abs(t.s)));
  return m;
}

double TrigPoly::sup_bound() const {
  double b = 0.0;
  for (const auto& [f, t] : terms_) b += std::hypot(t.c, t.s);
  return b;
}

double TrigPoly::evaluate(double x) const {
  double v = 0.0;
  for (const auto& [f, t] : terms_) {
    const double w = f.value(basis_) * x;
    v += t.c * std::cos(w) + t.s * std::sin(w);
  }
  return v;
}

std::vector<double> TrigPoly::evaluate(const std::vector<double>& xs) const {
  std::vector<double> out(xs.size(), 0.0);
  for (const auto& [f, t] : terms_) {
    const double v = f.value(basis_);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double w = v * xs[i];
      out[i] += t.c * std::cos(w) + t.s * std::sin(w);
    }
  }
  return out;
}

FrequencySet TrigPoly::frequencies() const {
  FrequencySet s(basis_);
  for (const auto& [f, t] : terms_) s.insert(f);
  return s;
}

bool TrigPoly::supported_in(const FrequencySet& g) const {
  for (const auto& [f, t] : terms_)
    if (!g.contains(f)) return false;
  return true;
}

TrigPoly TrigPoly::restricted_to(const FrequencySet& g) const {
  TrigPoly p(basis_);
  for (const auto& [f, t] : terms_)
    if (g.contains(f)) p.add_term(f, t.c, t.s);
  p.canonicalize();
  return p;
}

TrigPoly TrigPoly::outside(const FrequencySet& g) const {
  TrigPoly p(basis_);
  for (const auto& [f, t] : terms_)
    if (!g.contains(f)) p.add_term(f, t.c, t.s);
  p.canonicalize();
  return p;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
  require_same_basis(*this, other);
  for (const auto& [f, t] : other.terms()) add_term(f, t.c, t.s);
  canonicalize();
  return *this;
}

TrigPoly& TrigPoly::operator*=(double c) {
  for (auto& [f, t] : terms_) {
    t.c *= c;
    t.s *= c;
  }
  canonicalize();
  return *this;
}

TrigPoly tp_linear(const TrigPoly& p, const TrigPoly& q, double c1, double c2) {
  require_same_basis(p, q);
  TrigPoly out(p.basis());
  for (const auto& [f, t] : p.terms()) out.add_term(f, c1 * t.c, c1 * t.s);
  for (const auto& [f, t] : q.terms()) out.add_term(f, c2 * t.c, c2 * t.s);
  out.canonicalize();
  return out;
}

TrigPoly tp_scale(const TrigPoly& p, double c) {
  TrigPoly out = p;
  out *= c;
  return out;
}

TrigPoly tp_derivative(const TrigPoly& p) {
  TrigPoly out(p.basis());
  for (const auto& [f, t] : p.terms()) {
    const double v = f.value(p.basis());
    // (c cos + s sin)' = s v cos - c v sin
    out.add_term(f, v * t.s, -v * t.c);
  }
  out.canonicalize();
  return out;
}

TrigPoly tp_multiply(const TrigPoly& p, const TrigPoly& q) {
  require_same_basis(p, q);
  TrigPoly out(p.basis());
  for (const auto& [fp, tp] : p.terms()) {
    for (const auto& [fq, tq] : q.terms()) {
      // cosA cosB = (cos(A-B)+cos(A+B))/2,  sinA sinB = (cos(A-B)-cos(A+B))/2
      // sinA cosB = (sin(A+B)+sin(A-B))/2,  cosA sinB = (sin(A+B)-sin(A-B))/2
      const LatticeFrequency plus = fp + fq;
      const LatticeFrequency minus = fp - fq;
      out.add_term(plus, 0.5 * (tp.c * tq.c - tp.s * tq.s),
                   0.5 * (tp.c * tq.s + tp.s * tq.c));
      out.add_term(minus, 0.5 * (tp.c * tq.c + tp.s * tq.s),
                   0.5 * (tp.s * tq.c - tp.c * tq.s));
    }
  }
  out.canonicalize();
  return out;
}

TrigPoly burgers_bilinear(const TrigPoly& p) {
  return tp_multiply(p, tp_derivative(p));
}

}  // namespace lowmode
