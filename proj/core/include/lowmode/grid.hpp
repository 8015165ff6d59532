#pragma once

#include <cmath>
#include <vector>

#include "lowmode/errors.hpp"

namespace lowmode {

// Uniform periodic window [-L, L) with n power-of-two nodes.
struct Grid {
  double half_length = M_PI;
  int n = 256;

  double dx() const { return 2.0 * half_length / n; }
  double node(int i) const { return -half_length + i * dx(); }
  std::vector<double> nodes() const {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = node(i);
    return xs;
  }

  void validate() const {
    if (!(half_length > 0.0))
      throw WindowTooSmallError("window half-length must be positive");
    if (n < 16 || (n & (n - 1)) != 0)
      throw WindowMismatchError("grid size must be a power of two >= 16");
  }
};

inline bool operator==(const Grid& a, const Grid& b) {
  return a.half_length == b.half_length && a.n == b.n;
}

struct GridFunction {
  Grid grid;
  std::vector<double> values;
};

// Snapshots plus cheap per-step scalar monitors, so a-priori bounds can be
// checked without storing every state.
struct GridTrajectory {
  Grid grid;
  std::vector<double> times;
  std::vector<std::vector<double>> states;

  std::vector<double> step_times;  // every accepted step, including 0 and T
  std::vector<double> sup_u;       // max |u|
  std::vector<double> sup_a;       // max |u + g|
  std::vector<double> sup_b;       // max |dx g|
  std::vector<double> sup_c;       // max |f + mu dxx g - g dx g|

  const std::vector<double>& final_state() const { return states.back(); }
  GridFunction final_function() const { return {grid, states.back()}; }
  GridFunction at(std::size_t i) const { return {grid, states.at(i)}; }
};

}  // namespace lowmode
