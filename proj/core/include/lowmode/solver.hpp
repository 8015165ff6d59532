#pragma once

#include "lowmode/forcing.hpp"
#include "lowmode/grid.hpp"
#include "lowmode/norms.hpp"

namespace lowmode {

struct SolverConfig {
  double mu = 0.1;
  Grid grid;
  double dt = 1e-3;
  double t_final = 1.0;
  bool dealias = true;
  int snapshot_stride = 16;
  double blowup_threshold = 1e6;
  double cfl = 0.5;
  int max_substeps = 1 << 20;

  void validate() const {
    grid.validate();
    if (!(mu > 0.0)) throw WindowMismatchError("viscosity must be positive");
    if (!(dt > 0.0) || !(t_final > 0.0))
      throw WindowMismatchError("time step and horizon must be positive");
    if (snapshot_stride < 1)
      throw WindowMismatchError("snapshot stride must be >= 1");
  }
};

// Time-stepping for du/dt - mu dxx (u + g) + (u + g)(u + g)_x = f on the
// periodic window: exact integrating factor for the diffusion of u, explicit
// two-stage strong-stability rule for everything else, 2/3-rule dealiasing of
// the advection product. The advective CFL guard splits a step into equal
// substeps when |u + g| demands it.
GridTrajectory solve(const SolverConfig& cfg, const std::vector<double>& u0,
                     const ForcingSchedule& f = {},
                     const ForcingSchedule& g = {});

// Independent reference for the unforced equation via the logarithmic
// substitution u = -2 mu (log phi)_x: phi evolves under the exact spectral
// heat propagator, so the only discretization left is the initial quadrature.
// Requires mean(u0) ~ 0.
GridTrajectory cole_hopf_solve(const SolverConfig& cfg,
                               const std::vector<double>& u0);

// Heat semigroup at a single time: multiplies mode k by exp(-mu k^2 t).
GridFunction heat_convolve(const GridFunction& u, double mu, double t);

// K f (t) = integral_0^t of the heat semigroup applied to f(s): trapezoidal
// in time with exact propagation between nodes.
GridTrajectory duhamel(const ForcingSchedule& f, const SolverConfig& cfg);

}  // namespace lowmode
