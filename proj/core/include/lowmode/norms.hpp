#pragma once

#include <string>

#include "lowmode/grid.hpp"

namespace lowmode {

enum class NormKind {
  Sup,         // max over nodes
  L2Interval,  // L2 over [a, b]
  HsInterval,  // Sobolev order s over [a, b], spectral derivatives
  HsUl,        // sup over unit windows inside the domain of local H^s
  WeightedL2,  // L2 against exp(-|x - y|), truncated at the window
};

struct NormSpec {
  NormKind kind = NormKind::Sup;
  int s = 0;
  double a = 0.0;
  double b = 0.0;
  double y = 0.0;

  static NormSpec sup() { return {NormKind::Sup, 0, 0, 0, 0}; }
  static NormSpec l2(double a, double b) {
    return {NormKind::L2Interval, 0, a, b, 0};
  }
  static NormSpec hs(int s, double a, double b) {
    return {NormKind::HsInterval, s, a, b, 0};
  }
  static NormSpec hs_ul(int s) { return {NormKind::HsUl, s, 0, 0, 0}; }
  static NormSpec weighted(double y) {
    return {NormKind::WeightedL2, 0, 0, 0, y};
  }
};

double norm_value(const GridFunction& u, const NormSpec& spec);

double sup_norm(const std::vector<double>& v);
double l2_interval(const GridFunction& u, double a, double b);
double hs_interval(const GridFunction& u, int s, double a, double b);
double hs_ul(const GridFunction& u, int s);
double weighted_l2(const GridFunction& u, double y);

// Largest value over the stored snapshots.
double trajectory_max_norm(const GridTrajectory& traj, const NormSpec& spec);

std::string norm_name(const NormSpec& spec);

}  // namespace lowmode
