#pragma once

#include <optional>
#include <string>

#include "lowmode/schedule.hpp"
#include "lowmode/solver.hpp"

namespace lowmode {

// Reference control for the straight line u(t) = u0 + (t/T)(uhat - u0):
//   eta(t) = du/dt - mu dxx u + u dx u - h(t),
// computed exactly in the trig algebra, so the coefficients are quadratic
// polynomials in t and the controlled run lands on uhat at t = T by
// construction. h, when given, must be an exact schedule.
ControlSchedule straight_line_control(const TrigPoly& u0, const TrigPoly& uhat,
                                      double horizon, double mu,
                                      const ControlSchedule* h = nullptr);

// eta_n(t, x) = chi(x/n) * eta(t, x) with the fixed C-infinity plateau cutoff
// (1 on |x| <= 1, 0 on |x| >= 2, slope bounded by 2). The result is sampled on
// `grid` at `time_samples` uniform nodes.
ControlSchedule spatial_cutoff(const ControlSchedule& eta, int n_radius,
                               const Grid& grid, int time_samples = 129);

struct ProjectionParams {
  LatticeFrequency omega;
  double value = 0.0;  // numeric frequency
  int order = 0;       // lattice order of omega; projected controls with N
                       // modes live in lattice order <= N * order
};

// Smallest-order lattice frequency with 0 < omega < pi / max(2 n, rho), ties
// broken by smaller numeric value.
ProjectionParams choose_projection_params(int n_radius, double rho,
                                          const FrequencyBasis& basis);

// Truncated projection onto span{cos(j omega x), sin(j omega x) : j <= N}:
// coefficients are rectangle-rule quadratures of the input against the
// harmonics over one full period [-pi/omega, pi/omega). Sampled schedules are
// projected per time node and rebuilt linear in t; exact schedules are
// projected coefficient-wise, preserving their time structure.
ControlSchedule fourier_project(const ControlSchedule& eta_n,
                                const LatticeFrequency& omega, int modes);

struct RelaxResult {
  ControlSchedule eta_g;
  OscillationSchedule zeta_m;
};

// Constancy-interval-wise convex decomposition of a piecewise-constant
// schedule valued in the convexification span of (gens, g): returns the
// g-valued replacement eta_g and the fast-switching family zeta_m. Running
// the g-coefficient equation with (eta_g, zeta_m) converges, as m grows, to
// the averaged run driven by eta - sum_j alpha_j B(zeta_j).
RelaxResult relax_level(const ControlSchedule& eta, double nu, int m,
                        const std::vector<TrigPoly>& gens,
                        const FrequencySet& g);

// The mollified zeta with zero endpoints used by the absorption step.
ControlSchedule mollified_zeta(const OscillationSchedule& zeta, double theta);

// Absorbs the oscillating coefficient into the right-hand side: returns
// eta + d/dt zeta_tilde, where zeta_tilde is zeta mollified with ramps of
// width theta and pinned to zero at t = 0 and t = T. Solving the plain
// equation with the absorbed control reproduces (up to discretization and
// ramp width) the terminal state of the zeta-coefficient run. A
// piecewise-constant eta is mollified with the same theta so its ramps align.
ControlSchedule absorb_zeta(const ControlSchedule& eta,
                            const OscillationSchedule& zeta, double theta);

struct SteeringSpec {
  FrequencyBasis basis;
  TrigPoly u0{FrequencyBasis{}};
  TrigPoly uhat{FrequencyBasis{}};
  double horizon = 1.0;
  double epsilon = 0.1;
  double r = 2.0;    // half-width of the target window [-r, r]
  double mu = 0.5;
  std::optional<ControlSchedule> h;  // fixed background right-hand side

  Grid grid;
  double dt = 2e-3;
  int snapshot_stride = 1 << 20;  // keep only endpoints by default

  int cutoff_radius = 6;                  // n
  std::optional<LatticeFrequency> omega;  // auto-chosen when absent
  int modes = 16;                         // N
  int relax_depth = 0;                    // d
  int oscillation = 16;                   // m
  double theta = 0.0;                     // 0 -> T / (40 * switch count)
  double nu = 1e-3;
  int quantize_pieces = 16;               // P
  int time_samples = 129;

  void validate() const;
};

struct SteeringStage {
  std::string name;
  double sup_full = 0.0;   // terminal sup norm over the whole window
  double err_l2 = 0.0;     // terminal L2 distance to uhat on [-r, r]
  double err_sup = 0.0;    // terminal sup distance to uhat on [-r, r]
  int lattice_order = -1;  // control frequency order bound; -1 = unbounded
  std::vector<double> final_state;
};

struct SteeringResult {
  Grid grid;
  double epsilon = 0.0;
  double r = 0.0;
  ProjectionParams projection;
  std::vector<SteeringStage> stages;
  bool met = false;  // last stage err_l2 < epsilon
  std::vector<double> target_values;
};

// Runs the full chain: exact reference control, spatial cutoff, truncated
// projection, then `relax_depth` rounds of convexification + absorption, each
// stage solved to t = T with its control and scored against uhat. Always
// returns the complete ledger; stage errors are rethrown as StageFailure.
SteeringResult steer(const SteeringSpec& spec);

}  // namespace lowmode
