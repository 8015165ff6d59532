#include <algorithm>
#include <cmath>
#include <utility>

#include "lowmode/pipeline.hpp"

namespace lowmode {

void SteeringSpec::validate() const {
  basis.validate();
  grid.validate();
  require_same_basis(u0.basis(), basis);
  require_same_basis(uhat.basis(), basis);
  if (!(horizon > 0.0))
    throw WindowMismatchError("steering horizon must be positive");
  if (!(epsilon > 0.0))
    throw WindowMismatchError("target tolerance must be positive");
  if (!(r > 0.0) || r > 0.5 * grid.half_length)
    throw WindowTooSmallError(
        "target window [-r, r] must satisfy 0 < r <= L/2");
  if (!(mu > 0.0)) throw WindowMismatchError("viscosity must be positive");
  if (!(dt > 0.0)) throw WindowMismatchError("time step must be positive");
  if (modes < 0) throw WindowMismatchError("mode count must be >= 0");
  if (relax_depth < 0)
    throw WindowMismatchError("relaxation depth must be >= 0");
  if (h && !h->is_exact())
    throw WindowMismatchError("background forcing must be an exact schedule");
}

namespace {

SolverConfig stage_config(const SteeringSpec& spec) {
  SolverConfig cfg;
  cfg.mu = spec.mu;
  cfg.grid = spec.grid;
  cfg.dt = spec.dt;
  cfg.t_final = spec.horizon;
  cfg.snapshot_stride = spec.snapshot_stride;
  return cfg;
}

}  // namespace

SteeringResult steer(const SteeringSpec& spec) {
  spec.validate();

  SteeringResult result;
  result.grid = spec.grid;
  result.epsilon = spec.epsilon;
  result.r = spec.r;

  const std::vector<double> xs = spec.grid.nodes();
  result.target_values = spec.uhat.evaluate(xs);
  const std::vector<double> u0_values = spec.u0.evaluate(xs);
  const SolverConfig cfg = stage_config(spec);

  auto run_stage = [&](const std::string& name, const SolverConfig& stage_cfg,
                       const ForcingSchedule& f, const ForcingSchedule& g,
                       int lattice_order) {
    try {
      GridTrajectory traj = solve(stage_cfg, u0_values, f, g);
      SteeringStage stage;
      stage.name = name;
      stage.lattice_order = lattice_order;
      stage.final_state = traj.final_state();
      std::vector<double> diff(stage.final_state.size());
      for (std::size_t i = 0; i < diff.size(); ++i)
        diff[i] = stage.final_state[i] - result.target_values[i];
      stage.sup_full = sup_norm(stage.final_state);
      stage.err_l2 =
          l2_interval({spec.grid, diff}, -spec.r, spec.r);
      double sup_win = 0.0;
      for (std::size_t i = 0; i < diff.size(); ++i)
        if (std::fabs(xs[i]) <= spec.r)
          sup_win = std::max(sup_win, std::fabs(diff[i]));
      stage.err_sup = sup_win;
      result.stages.push_back(std::move(stage));
    } catch (const Error& e) {
      throw StageFailureError(name + ": " + e.what());
    }
  };

  auto with_background = [&](const ControlSchedule& eta) {
    ForcingSchedule f = eta.to_forcing();
    if (spec.h) f += spec.h->to_forcing();
    return f;
  };

  // Stage 1: exact reference control along the straight line to uhat.
  ControlSchedule eta0 = [&] {
    try {
      return straight_line_control(spec.u0, spec.uhat, spec.horizon, spec.mu,
                                   spec.h ? &*spec.h : nullptr);
    } catch (const Error& e) {
      throw StageFailureError(std::string("reference: ") + e.what());
    }
  }();
  run_stage("reference", cfg, with_background(eta0), ForcingSchedule::zero(),
            -1);

  // Stage 2: compactly supported version of the same control.
  ControlSchedule eta_n = [&] {
    try {
      return spatial_cutoff(eta0, spec.cutoff_radius, spec.grid,
                            spec.time_samples);
    } catch (const Error& e) {
      throw StageFailureError(std::string("cutoff: ") + e.what());
    }
  }();
  run_stage("cutoff", cfg, with_background(eta_n), ForcingSchedule::zero(),
            -1);

  // Stage 3: truncated projection onto the omega-harmonics.
  ControlSchedule eta_p = [&] {
    try {
      if (spec.omega) {
        result.projection = {*spec.omega, spec.omega->value(spec.basis),
                             spec.omega->order()};
      } else {
        result.projection =
            choose_projection_params(spec.cutoff_radius, spec.r, spec.basis);
      }
      return fourier_project(eta_n, result.projection.omega, spec.modes);
    } catch (const Error& e) {
      throw StageFailureError(std::string("projection: ") + e.what());
    }
  }();
  const int k_projected = spec.modes * result.projection.order;
  run_stage("projection", cfg, with_background(eta_p), ForcingSchedule::zero(),
            k_projected);

  // Stage 4+: relaxation rounds, each landing one lattice order lower.
  ControlSchedule current = eta_p;
  int k_current = k_projected;
  const std::vector<TrigPoly> gens = saturation_generators(spec.basis);
  for (int level = 1; level <= spec.relax_depth; ++level) {
    const std::string name = "relax-" + std::to_string(level);
    ControlSchedule absorbed = [&] {
      try {
        const int k_target = k_current - 1;
        if (k_target < 1)
          throw NotDecomposableError(
              "relaxation cannot descend below lattice order 1");
        FrequencySet g = enumerate_lattice(k_target, spec.basis);
        ControlSchedule quantized = current.quantize(spec.quantize_pieces);
        RelaxResult relaxed =
            relax_level(quantized, spec.nu, spec.oscillation, gens, g);
        const double theta =
            spec.theta > 0.0
                ? spec.theta
                : spec.horizon /
                      (40.0 * (relaxed.zeta_m.switch_count() + 2));
        return absorb_zeta(relaxed.eta_g, relaxed.zeta_m, theta);
      } catch (const Error& e) {
        throw StageFailureError(name + ": " + e.what());
      }
    }();
    --k_current;
    // The absorbed control concentrates its action in mollification ramps;
    // refine the stage step until every segment holds several substeps.
    SolverConfig relax_cfg = cfg;
    double min_width = spec.horizon;
    for (const auto& seg : absorbed.segments())
      min_width = std::min(min_width, seg.t1 - seg.t0);
    relax_cfg.dt = std::min(cfg.dt, min_width / 4.0);
    run_stage(name, relax_cfg, with_background(absorbed),
              ForcingSchedule::zero(), k_current);
    current = std::move(absorbed);
  }

  result.met = !result.stages.empty() &&
               result.stages.back().err_l2 < spec.epsilon;
  return result;
}

}  // namespace lowmode
