#pragma once

#include <optional>
#include <vector>

#include "lowmode/convexify.hpp"
#include "lowmode/forcing.hpp"
#include "lowmode/trig_poly.hpp"

namespace lowmode {

enum class Smoothness { Smooth, PiecewiseConstant, Mollified };

// One time slice [t0, t1) of an exact control. The value is
//   sum_d poly[d] * t^d  +  psi(tau) * ramp_a  +  psi'(tau)/(t1-t0) * ramp_b
// with tau = (t-t0)/(t1-t0) and psi the C-infinity unit step. Polynomials use
// absolute time, so slicing a segment never changes its coefficients; ramps
// are tied to their segment and cannot be sliced.
struct ScheduleSegment {
  double t0 = 0.0;
  double t1 = 0.0;
  std::vector<TrigPoly> poly;
  std::optional<TrigPoly> ramp_a;
  std::optional<TrigPoly> ramp_b;

  bool has_ramp() const { return ramp_a.has_value() || ramp_b.has_value(); }
};

// Time-parametrized control on [0, T]: either an exact piecewise description
// (contiguous segments) or grid samples interpolated linearly in time.
class ControlSchedule {
 public:
  static ControlSchedule constant(const TrigPoly& v, double horizon);
  // values[i] on [cuts[i-1], cuts[i]) with cuts the interior breakpoints.
  static ControlSchedule piecewise(std::vector<TrigPoly> values,
                                   const std::vector<double>& cuts,
                                   double horizon);
  // sum_d coeffs[d] * t^d on all of [0, T].
  static ControlSchedule polynomial(std::vector<TrigPoly> coeffs,
                                    double horizon);
  static ControlSchedule from_segments(const FrequencyBasis& basis,
                                       std::vector<ScheduleSegment> segments,
                                       Smoothness tag);
  static ControlSchedule sampled(const FrequencyBasis& basis, const Grid& grid,
                                 ForcingSchedule::SampledPart samples,
                                 double horizon);

  double horizon() const { return horizon_; }
  bool is_exact() const { return exact_; }
  Smoothness smoothness() const { return tag_; }
  const FrequencyBasis& basis() const { return basis_; }
  const std::vector<ScheduleSegment>& segments() const { return segments_; }
  const Grid& sample_grid() const;
  const ForcingSchedule::SampledPart& samples() const;

  // Exact schedules only. Segments are half-open; t is clamped to [0, T].
  TrigPoly value_at(double t) const;
  // Interior segment boundaries.
  std::vector<double> switch_times() const;

  ControlSchedule scaled(double c) const;
  // Pointwise sum. Exact operands are refined to the common breakpoint set;
  // a ramp may not be cut by the other schedule's boundaries.
  ControlSchedule added_to(const ControlSchedule& other) const;

  // Midpoint sampling into `pieces` equal constancy intervals.
  ControlSchedule quantize(int pieces) const;

  // Replaces each jump of a piecewise-constant schedule by a C-infinity ramp
  // of width theta centred at the switch; with pin_zero_ends, also ramps from
  // zero on [0, theta] and back to zero on [T-theta, T]. The result is C^1 at
  // every former switch.
  ControlSchedule mollify(double theta, bool pin_zero_ends = false) const;

  // Exact analytic d/dt; defined for schedules whose ramps carry only the
  // psi-part (always true for mollify output).
  ControlSchedule time_derivative() const;

  ForcingSchedule to_forcing() const;

 private:
  ControlSchedule() : basis_{} {}

  bool exact_ = true;
  Smoothness tag_ = Smoothness::Smooth;
  FrequencyBasis basis_;
  double horizon_ = 0.0;
  std::vector<ScheduleSegment> segments_;
  Grid grid_;
  ForcingSchedule::SampledPart samples_;
};

// Fast-switching family: on each base interval [breakpoints[i],
// breakpoints[i+1]) the control cycles m times through the vectors zetas of
// decomps[i], each occupying its weight's fraction of the cycle.
struct OscillationSchedule {
  FrequencyBasis basis;
  double horizon = 0.0;
  std::vector<double> breakpoints;            // 0 = b_0 < ... < b_K = T
  std::vector<ConvexDecomposition> decomps;   // one per interval
  int m = 1;

  void validate() const;
  // Direct slot lookup.
  const TrigPoly& zeta_at(double t) const;
  // Materialized piecewise-constant schedules.
  ControlSchedule zeta_schedule() const;
  ControlSchedule eta_schedule() const;
  // Per-interval eta - sum_j alpha_j B(zeta_j): the control whose plain run
  // is the fast-oscillation limit.
  ControlSchedule averaged_schedule() const;
  int switch_count() const;
};

}  // namespace lowmode
