#include "lowmode/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "lowmode/spectral.hpp"

namespace lowmode {

namespace {

// Norm evaluation reuses transforms heavily; plans are cached per grid.
Spectral& shared_spectral(const Grid& g) {
  static std::mutex m;
  static std::map<std::pair<double, int>, std::unique_ptr<Spectral>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_pair(g.half_length, g.n);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<Spectral>(g)).first;
  return *it->second;
}

void check_interval(const Grid& g, double a, double b) {
  const double tol = 1e-12 * g.half_length;
  if (!(a < b) || a < -g.half_length - tol || b > g.half_length + tol)
    throw IntervalOutOfWindowError("interval [" + std::to_string(a) + ", " +
                                   std::to_string(b) + "] outside window");
}

double l2_interval_values(const Grid& g, const std::vector<double>& v,
                          double a, double b) {
  double sum = 0.0;
  const double dx = g.dx();
  for (int i = 0; i < g.n; ++i) {
    const double x = g.node(i);
    if (x >= a && x < b) sum += v[i] * v[i];
  }
  return std::sqrt(sum * dx);
}

}  // namespace

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double l2_interval(const GridFunction& u, double a, double b) {
  check_interval(u.grid, a, b);
  return l2_interval_values(u.grid, u.values, a, b);
}

double hs_interval(const GridFunction& u, int s, double a, double b) {
  check_interval(u.grid, a, b);
  Spectral& spec = shared_spectral(u.grid);
  double sq = 0.0;
  std::vector<double> d = u.values;
  for (int j = 0; j <= s; ++j) {
    const double lj = l2_interval_values(u.grid, d, a, b);
    sq += lj * lj;
    if (j < s) d = spec.derivative(u.values, j + 1);
  }
  return std::sqrt(sq);
}

double hs_ul(const GridFunction& u, int s) {
  const Grid& g = u.grid;
  if (2.0 * g.half_length < 1.0)
    throw IntervalOutOfWindowError("window shorter than a unit interval");
  Spectral& spec = shared_spectral(g);

  // Prefix sums of each derivative squared give every unit-window energy in
  // O(1).
  std::vector<std::vector<double>> prefixes;
  std::vector<double> d = u.values;
  for (int j = 0; j <= s; ++j) {
    std::vector<double> p(g.n + 1, 0.0);
    for (int i = 0; i < g.n; ++i) p[i + 1] = p[i] + d[i] * d[i];
    prefixes.push_back(std::move(p));
    if (j < s) d = spec.derivative(u.values, j + 1);
  }

  const double dx = g.dx();
  const int win = static_cast<int>(std::floor(1.0 / dx + 0.5));
  double best = 0.0;
  for (int lo = 0; lo + win <= g.n; ++lo) {
    double sq = 0.0;
    for (const auto& p : prefixes) sq += (p[lo + win] - p[lo]) * dx;
    best = std::max(best, sq);
  }
  return std::sqrt(best);
}

double weighted_l2(const GridFunction& u, double y) {
  const Grid& g = u.grid;
  double sum = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.node(i);
    sum += u.values[i] * u.values[i] * std::exp(-std::abs(x - y));
  }
  return std::sqrt(sum * g.dx());
}

double norm_value(const GridFunction& u, const NormSpec& spec) {
  switch (spec.kind) {
    case NormKind::Sup:
      return sup_norm(u.values);
    case NormKind::L2Interval:
      return l2_interval(u, spec.a, spec.b);
    case NormKind::HsInterval:
      return hs_interval(u, spec.s, spec.a, spec.b);
    case NormKind::HsUl:
      return hs_ul(u, spec.s);
    case NormKind::WeightedL2:
      return weighted_l2(u, spec.y);
  }
  throw Error("unknown norm kind");
}

double trajectory_max_norm(const GridTrajectory& traj, const NormSpec& spec) {
  double best = 0.0;
  for (const auto& state : traj.states)
    best = std::max(best, norm_value({traj.grid, state}, spec));
  return best;
}

std::string norm_name(const NormSpec& spec) {
  std::ostringstream os;
  switch (spec.kind) {
    case NormKind::Sup:
      os << "sup";
      break;
    case NormKind::L2Interval:
      os << "l2[" << spec.a << "," << spec.b << "]";
      break;
    case NormKind::HsInterval:
      os << "h" << spec.s << "[" << spec.a << "," << spec.b << "]";
      break;
    case NormKind::HsUl:
      os << "h" << spec.s << "_ul";
      break;
    case NormKind::WeightedL2:
      os << "l2w[y=" << spec.y << "]";
      break;
  }
  return os.str();
}

}  // namespace lowmode
