#pragma once

#include <cmath>

namespace lowmode {

// C-infinity transition built from sigma(s) = exp(-1/s): all derivatives
// vanish at both ends, so piecewise constructions glue smoothly.
inline double smoothstep01(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s);
  const double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

inline double smoothstep01_deriv(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / s);
  const double b = std::exp(-1.0 / (1.0 - s));
  const double da = a / (s * s);
  const double db = b / ((1.0 - s) * (1.0 - s));
  // d/ds [a/(a+b)] with b' = -db.
  return (da * b + a * db) / ((a + b) * (a + b));
}

// Even cutoff: 1 on |x| <= 1, 0 on |x| >= 2, values in [0,1], |chi'| <= 2
// (the slope peaks at exactly 2 mid-transition).
inline double cutoff_chi(double x) {
  return smoothstep01(2.0 - std::abs(x));
}

inline double cutoff_chi_deriv(double x) {
  const double ax = std::abs(x);
  if (ax <= 1.0 || ax >= 2.0) return 0.0;
  const double sign = x > 0.0 ? 1.0 : -1.0;
  return -sign * smoothstep01_deriv(2.0 - ax);
}

}  // namespace lowmode
