#include "lowmode/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "lowmode/bump.hpp"
#include "lowmode/csv.hpp"
#include "lowmode/io.hpp"
#include "lowmode/norms.hpp"
#include "lowmode/rng.hpp"
#include "lowmode/saturation.hpp"
#include "json_detail.hpp"

namespace lowmode {

namespace {

std::vector<double> diff_values(const std::vector<double>& a,
                                const std::vector<double>& b) {
  if (a.size() != b.size())
    throw WindowMismatchError("state vectors have different sizes");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

GridFunction diff_function(const Grid& grid, const std::vector<double>& a,
                           const std::vector<double>& b) {
  return {grid, diff_values(a, b)};
}

// Running trapezoid integral of v over the (strictly increasing) nodes t.
std::vector<double> cumulative_trapezoid(const std::vector<double>& t,
                                         const std::vector<double>& v) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (v[i] + v[i - 1]);
  return out;
}

// Pointwise Gronwall envelope for the transport reading of the equation:
//   sup|u(t)| <= exp(int_0^t sup|dx g|) * (sup|u(0)| + int_0^t sup|c|).
std::vector<double> transport_bounds(const GridTrajectory& traj) {
  const auto ib = cumulative_trapezoid(traj.step_times, traj.sup_b);
  const auto ic = cumulative_trapezoid(traj.step_times, traj.sup_c);
  std::vector<double> bound(traj.step_times.size());
  for (std::size_t i = 0; i < bound.size(); ++i)
    bound[i] = std::exp(ib[i]) * (traj.sup_u.front() + ic[i]);
  return bound;
}

// Names consecutive-pair checks "<stem>-1", "<stem>-2", ... over the last
// `window + 1` entries of `e`, each requiring e[i+1] <= e[i] + slack.
void append_decrease_checks(std::vector<CheckReport>& checks,
                            const std::string& stem,
                            const std::vector<double>& e, int window,
                            double abs_slack, const std::string& prov) {
  const int k = static_cast<int>(e.size());
  const int first = std::max(0, k - 1 - window);
  int idx = 1;
  for (int i = first; i + 1 < k; ++i, ++idx)
    checks.push_back(make_check(stem + "-" + std::to_string(idx), e[i + 1],
                                e[i], abs_slack, prov));
}

int missing_count(const FrequencySet& wanted, const FrequencySet& have) {
  int missing = 0;
  for (const auto& f : wanted)
    if (!have.contains(f)) ++missing;
  return missing;
}

}  // namespace

CheckReport make_check(const std::string& name, double lhs, double rhs,
                       double slack, const std::string& provenance) {
  CheckReport c;
  c.name = name;
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = slack;
  c.pass = (lhs <= rhs + slack);  // NaN on either side fails
  c.provenance = provenance;
  return c;
}

bool all_pass(const std::vector<CheckReport>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::vector<CheckReport> check_targets(const GridFunction& u_final,
                                       const TrigPoly& uhat, double eps,
                                       double r, double k_bound,
                                       const std::string& provenance) {
  u_final.grid.validate();
  std::vector<CheckReport> checks;
  checks.push_back(make_check("terminal-sup-bound", sup_norm(u_final.values),
                              k_bound, 0.0, provenance));
  const auto target = uhat.evaluate(u_final.grid.nodes());
  const auto err = diff_function(u_final.grid, u_final.values, target);
  checks.push_back(
      make_check("terminal-l2-error", l2_interval(err, -r, r), eps, 0.0,
                 provenance));
  return checks;
}

std::vector<CheckReport> apriori_checks(const GridTrajectory& traj,
                                        double relative_slack,
                                        const std::string& provenance) {
  std::vector<CheckReport> checks;
  const auto bound = transport_bounds(traj);
  double worst = -std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (std::size_t i = 0; i < bound.size(); ++i) {
    worst = std::max(worst, traj.sup_u[i] - bound[i]);
    scale = std::max(scale, bound[i]);
  }
  checks.push_back(make_check("max-principle", worst, 0.0,
                              relative_slack * scale, provenance));

  // The exponential weight integrates to at most 2 over the line, so every
  // weighted energy is below sqrt(2) times the terminal sup envelope.
  const GridFunction u_final = traj.final_function();
  const double rhs = std::sqrt(2.0) * bound.back();
  const double l = traj.grid.half_length;
  const std::pair<std::string, double> centres[] = {
      {"weighted-energy-left", -0.5 * l},
      {"weighted-energy-center", 0.0},
      {"weighted-energy-right", 0.5 * l}};
  for (const auto& [name, y] : centres)
    checks.push_back(make_check(name, weighted_l2(u_final, y), rhs,
                                relative_slack * rhs, provenance));
  return checks;
}

// ---------------------------------------------------------------------------
// Studies

RelaxStudyResult relax_study(const RelaxStudy& study,
                             const std::string& provenance) {
  study.grid.validate();
  if (study.m_values.empty())
    throw ConfigParseError("relaxation study needs oscillation counts");
  if (study.eta1.is_zero())
    throw ConfigParseError("relaxation study needs a nonzero control");

  const auto gens = saturation_generators(study.basis);
  const FrequencySet g = study.target_order <= 0
                             ? make_control_space(study.basis)
                             : enumerate_lattice(study.target_order,
                                                 study.basis);

  const ControlSchedule eta =
      ControlSchedule::piecewise({study.eta1}, {}, study.t_final);
  const RelaxResult rel =
      relax_level(eta, study.nu, study.m_values.front(), gens, g);

  SolverConfig cfg;
  cfg.mu = study.mu;
  cfg.grid = study.grid;
  cfg.dt = study.dt;
  cfg.t_final = study.t_final;
  cfg.snapshot_stride = 1 << 30;  // endpoints only
  const std::vector<double> u0(study.grid.n, 0.0);

  const GridTrajectory averaged =
      solve(cfg, u0, rel.zeta_m.averaged_schedule().to_forcing());

  RelaxStudyResult out;
  out.m = study.m_values;
  std::sort(out.m.begin(), out.m.end());
  out.epsilon = rel.zeta_m.decomps.front().epsilon;
  out.residual_bound = rel.zeta_m.decomps.front().residual_bound;

  std::vector<std::future<double>> work;
  for (int mv : out.m) {
    work.push_back(std::async(std::launch::async, [&, mv] {
      OscillationSchedule osc = rel.zeta_m;
      osc.m = mv;
      const GridTrajectory traj = solve(cfg, u0, osc.eta_schedule().to_forcing(),
                                        osc.zeta_schedule().to_forcing());
      const auto d = diff_function(study.grid, traj.final_state(),
                                   averaged.final_state());
      return hs_interval(d, 1, -study.grid.half_length,
                         study.grid.half_length);
    }));
  }
  for (auto& f : work) out.error.push_back(f.get());

  out.checks.push_back(make_check("averaging-halving", out.error.back(),
                                  study.halving_factor * out.error.front(),
                                  0.0, provenance));
  append_decrease_checks(out.checks, "averaging-tail", out.error, 2, 0.0,
                         provenance);
  return out;
}

ExtensionStudyResult extension_study(const ExtensionStudy& study,
                                     const std::string& provenance) {
  study.grid.validate();
  if (study.levels < 2)
    throw ConfigParseError("extension study needs at least two levels");
  if (study.eta1.is_zero())
    throw ConfigParseError("extension study needs a nonzero control");

  const auto gens = saturation_generators(study.basis);
  const FrequencySet g = study.target_order <= 0
                             ? make_control_space(study.basis)
                             : enumerate_lattice(study.target_order,
                                                 study.basis);
  const ControlSchedule eta =
      ControlSchedule::piecewise({study.eta1}, {}, study.t_final);
  const RelaxResult rel =
      relax_level(eta, study.nu, study.oscillation, gens, g);
  const ControlSchedule zeta_raw = rel.zeta_m.zeta_schedule();

  double theta0 = study.theta;
  if (!(theta0 > 0.0)) {
    // Widest ramp that keeps every mollification window disjoint, including
    // the pinned windows at t = 0 and t = T, then a factor-4 safety margin.
    const auto s = zeta_raw.switch_times();
    const double t_total = study.t_final;
    double gap = t_total / (2.0 * (s.size() + 2.0));
    if (!s.empty()) {
      gap = std::min(gap, s.front() / 1.5);
      gap = std::min(gap, (t_total - s.back()) / 1.5);
      for (std::size_t i = 0; i + 1 < s.size(); ++i)
        gap = std::min(gap, s[i + 1] - s[i]);
    }
    theta0 = gap / 4.0;
  }

  ExtensionStudyResult out;
  std::vector<std::future<double>> work;
  for (int level = 0; level < study.levels; ++level) {
    const double scale = std::ldexp(1.0, -level);
    out.dt.push_back(study.dt * scale);
    out.theta.push_back(theta0 * scale);
    work.push_back(std::async(std::launch::async, [&, level, scale] {
      SolverConfig cfg;
      cfg.mu = study.mu;
      cfg.grid = study.grid;
      cfg.dt = study.dt * scale;
      cfg.t_final = study.t_final;
      cfg.snapshot_stride = 1 << 30;
      const std::vector<double> u0(study.grid.n, 0.0);
      const GridTrajectory fast =
          solve(cfg, u0, rel.eta_g.to_forcing(), zeta_raw.to_forcing());
      const ControlSchedule absorbed =
          absorb_zeta(rel.eta_g, rel.zeta_m, theta0 * scale);
      const GridTrajectory plain = solve(cfg, u0, absorbed.to_forcing());
      const auto d = diff_function(study.grid, fast.final_state(),
                                   plain.final_state());
      return l2_interval(d, -study.grid.half_length, study.grid.half_length);
    }));
  }
  for (auto& f : work) out.mismatch.push_back(f.get());

  for (std::size_t i = 0; i + 1 < out.mismatch.size(); ++i)
    out.checks.push_back(make_check(
        "extension-contraction-" + std::to_string(i + 1), out.mismatch[i + 1],
        study.ratio_bound * out.mismatch[i], 0.0, provenance));
  return out;
}

LocalityResult locality_check(const LocalityStudy& study,
                              const std::string& provenance) {
  study.grid.validate();
  if (study.rho_list.empty())
    throw ConfigParseError("locality study needs perturbation radii");
  if (!(study.r > 0.0) || study.r >= study.grid.half_length)
    throw WindowTooSmallError("observation radius must sit inside the window");

  LocalityResult out;
  out.rho = study.rho_list;
  std::sort(out.rho.begin(), out.rho.end());

  const auto xs = study.grid.nodes();
  const std::vector<double> u0 = study.u0.is_zero()
                                     ? std::vector<double>(study.grid.n, 0.0)
                                     : study.u0.evaluate(xs);

  // Two independent seeded fields, reused for every radius so only the mask
  // varies: a state perturbation and a constant-in-time forcing perturbation.
  const CounterRng rng(study.seed);
  const double l = study.grid.half_length;
  auto field = [&](std::uint64_t base) {
    std::vector<double> v(study.grid.n, 0.0);
    for (int j = 1; j <= study.noise_modes; ++j) {
      const double a = rng.symmetric(base + 2 * j);
      const double b = rng.symmetric(base + 2 * j + 1);
      const double k = j * M_PI / l;
      for (int i = 0; i < study.grid.n; ++i)
        v[i] += (a * std::cos(k * xs[i]) + b * std::sin(k * xs[i])) / j;
    }
    return v;
  };
  const auto noise_state = field(0);
  const auto noise_force = field(1024);

  SolverConfig cfg;
  cfg.mu = study.mu;
  cfg.grid = study.grid;
  cfg.dt = study.dt;
  cfg.t_final = study.t_final;
  const int n_steps =
      std::max(1, static_cast<int>(std::lround(study.t_final / study.dt)));
  cfg.snapshot_stride = std::max(1, n_steps / 32);

  const GridTrajectory base_run = solve(cfg, u0);

  std::vector<std::future<double>> work;
  for (double rho : out.rho) {
    work.push_back(std::async(std::launch::async, [&, rho] {
      std::vector<double> u0p = u0;
      ForcingSchedule::SampledPart part;
      part.times = {0.0, study.t_final};
      std::vector<double> fv(study.grid.n, 0.0);
      for (int i = 0; i < study.grid.n; ++i) {
        const double mask = 1.0 - cutoff_chi(xs[i] / rho);
        u0p[i] += study.amplitude * mask * noise_state[i];
        fv[i] = study.amplitude * mask * noise_force[i];
      }
      part.values = {fv, fv};
      const GridTrajectory run =
          solve(cfg, u0p, ForcingSchedule::sampled(std::move(part)));
      const std::size_t count =
          std::min(base_run.states.size(), run.states.size());
      double effect = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        const auto d =
            diff_function(study.grid, run.states[i], base_run.states[i]);
        effect = std::max(effect, l2_interval(d, -study.r, study.r));
      }
      return effect;
    }));
  }
  for (auto& f : work) out.effect.push_back(f.get());

  // Distinct radii at or below the round-off plateau are treated as ties.
  const double noise_floor = 1e-9;
  append_decrease_checks(out.checks, "locality-monotone", out.effect,
                         static_cast<int>(out.effect.size()), noise_floor,
                         provenance);
  out.checks.push_back(make_check("locality-far-bound", out.effect.back(),
                                  study.delta, 0.0, provenance));
  return out;
}

// ---------------------------------------------------------------------------
// Structure checks shared by `verify` and the acceptance suite

std::vector<CheckReport> span_ladder_checks(const FrequencyBasis& basis,
                                            int k_max,
                                            const std::string& provenance) {
  const auto gens = saturation_generators(basis);
  FrequencySet reach = make_control_space(basis);
  std::vector<CheckReport> checks;
  checks.push_back(make_check(
      "span-order-1", missing_count(enumerate_lattice(1, basis), reach), 0.0,
      0.0, provenance));
  for (int k = 2; k <= k_max; ++k) {
    reach = convexification_span(gens, reach);
    checks.push_back(make_check(
        "span-order-" + std::to_string(k),
        missing_count(enumerate_lattice(k, basis), reach), 0.0, 0.0,
        provenance));
  }
  return checks;
}

std::vector<CheckReport> identity_residual_checks(
    const FrequencyBasis& basis, int max_order, double tol,
    const std::string& provenance) {
  double worst = 0.0;
  double decomposed = 0.0;
  for (const auto& f : enumerate_lattice(max_order, basis)) {
    if (f.is_zero() || f.order() <= 1) continue;
    try {
      const SaturationIdentity id = saturation_decompose(f, basis);
      const TrigPoly sin_target = TrigPoly::harmonic(basis, f, 0.0, 1.0);
      const TrigPoly cos_target = TrigPoly::harmonic(basis, f, 1.0, 0.0);
      worst = std::max(worst, (id.sin_rhs - sin_target).max_abs_coeff());
      worst = std::max(worst, (id.cos_rhs - cos_target).max_abs_coeff());
      decomposed += 1.0;
    } catch (const NotDecomposableError&) {
    } catch (const DivisionByZeroError&) {
    }
  }
  std::vector<CheckReport> checks;
  checks.push_back(
      make_check("identity-max-residual", worst, 0.0, tol, provenance));
  checks.push_back(
      make_check("identity-coverage", 1.0, decomposed, 0.0, provenance));
  return checks;
}

CheckReport lattice_gap_check(const FrequencyBasis& basis, int order,
                              double upper, double max_gap,
                              const std::string& provenance) {
  std::vector<double> values;
  for (const auto& f : enumerate_lattice(order, basis).sorted_by_value()) {
    const double v = f.value(basis);
    if (v <= upper) values.push_back(v);
  }
  double widest = upper;  // empty set leaves the whole interval uncovered
  if (!values.empty()) {
    widest = values.front();  // distance down to 0
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
      widest = std::max(widest, values[i + 1] - values[i]);
    widest = std::max(widest, upper - values.back());
  }
  return make_check("lattice-density-gap", widest, max_gap, 0.0, provenance);
}

// ---------------------------------------------------------------------------
// Experiment dispatch

namespace {

using detail::json;

SolverConfig solver_config(const ExperimentSpec& spec) {
  SolverConfig cfg;
  cfg.mu = spec.mu;
  cfg.grid = spec.grid;
  cfg.dt = spec.dt;
  cfg.t_final = spec.t_final;
  cfg.snapshot_stride = spec.snapshot_stride;
  return cfg;
}

ForcingSchedule spec_forcing(const ExperimentSpec& spec) {
  if (spec.forcing_poly.empty()) return ForcingSchedule::zero();
  return ControlSchedule::polynomial(spec.forcing_poly, spec.t_final)
      .to_forcing();
}

std::string csv_of_trajectory(const GridTrajectory& traj) {
  CsvBuilder csv;
  csv.row({"t", "x", "u"});
  const auto xs = traj.grid.nodes();
  for (std::size_t s = 0; s < traj.times.size(); ++s)
    for (int i = 0; i < traj.grid.n; ++i)
      csv.row({CsvBuilder::num(traj.times[s]), CsvBuilder::num(xs[i]),
               CsvBuilder::num(traj.states[s][i])});
  return csv.str();
}

std::string csv_of_monitors(const GridTrajectory& traj) {
  CsvBuilder csv;
  csv.row({"t", "sup_u", "sup_a", "sup_b", "sup_c", "bound"});
  const auto bound = transport_bounds(traj);
  for (std::size_t i = 0; i < traj.step_times.size(); ++i)
    csv.row({CsvBuilder::num(traj.step_times[i]),
             CsvBuilder::num(traj.sup_u[i]), CsvBuilder::num(traj.sup_a[i]),
             CsvBuilder::num(traj.sup_b[i]), CsvBuilder::num(traj.sup_c[i]),
             CsvBuilder::num(bound[i])});
  return csv.str();
}

void run_simulate(const ExperimentSpec& spec, const std::string& hash,
                  RunResult& out, json& root) {
  const SolverConfig cfg = solver_config(spec);
  const auto u0 = spec.u0.evaluate(spec.grid.nodes());
  const GridTrajectory traj = solve(cfg, u0, spec_forcing(spec));

  out.checks = apriori_checks(
      traj, spec.tolerance("max_principle_rel_slack", 1e-6), hash);

  if (spec.compare_cole_hopf) {
    if (!spec.forcing_poly.empty())
      throw ConfigParseError("closed-form comparison requires an unforced run");
    const GridTrajectory exact = cole_hopf_solve(cfg, u0);
    double worst = 0.0;
    const std::size_t count = std::min(traj.states.size(), exact.states.size());
    for (std::size_t i = 0; i < count; ++i)
      worst = std::max(
          worst, sup_norm(diff_values(traj.states[i], exact.states[i])));
    out.checks.push_back(make_check("closed-form-sup-error", worst,
                                    spec.tolerance("oracle_sup", 1e-6), 0.0,
                                    hash));
  }

  root["result"] = {{"snapshots", traj.times.size()},
                    {"steps", traj.step_times.size() - 1},
                    {"final_sup", sup_norm(traj.final_state())}};
  out.artifacts.push_back({"snapshots.csv", csv_of_trajectory(traj)});
  out.artifacts.push_back({"monitors.csv", csv_of_monitors(traj)});
}

// Rebuilds the cutoff + projection stack and counts projected frequencies
// that escape span{ j * omega : j <= modes }.
CheckReport projection_containment_check(const SteeringSpec& st,
                                         const LatticeFrequency& omega,
                                         const std::string& hash) {
  const ControlSchedule eta0 = straight_line_control(
      st.u0, st.uhat, st.horizon, st.mu, st.h ? &*st.h : nullptr);
  const ControlSchedule eta_n =
      spatial_cutoff(eta0, st.cutoff_radius, st.grid, st.time_samples);
  const ControlSchedule eta_p = fourier_project(eta_n, omega, st.modes);

  FrequencySet allowed(st.basis);
  for (int j = 0; j <= st.modes; ++j) allowed.insert(j * omega);
  int escaped = 0;
  auto scan = [&](const TrigPoly& p) { escaped += missing_count(p.frequencies(), allowed); };
  for (const auto& seg : eta_p.segments()) {
    for (const auto& p : seg.poly) scan(p);
    if (seg.ramp_a) scan(*seg.ramp_a);
    if (seg.ramp_b) scan(*seg.ramp_b);
  }
  return make_check("projection-containment", escaped, 0.0, 0.0, hash);
}

void run_steer(const ExperimentSpec& spec, const std::string& hash,
               RunResult& out, json& root) {
  const SteeringSpec& st = spec.steering;
  const SteeringResult res = steer(st);

  const double k_default = st.uhat.sup_bound() + st.u0.sup_bound() + 1.0;
  out.checks = check_targets(
      GridFunction{res.grid, res.stages.back().final_state}, st.uhat,
      st.epsilon, st.r, spec.tolerance("k_bound", k_default), hash);
  out.checks.push_back(
      projection_containment_check(st, res.projection.omega, hash));

  json stages = json::array();
  CsvBuilder table;
  table.row({"stage", "lattice_order", "sup_full", "err_l2", "err_sup"});
  for (const auto& s : res.stages) {
    stages.push_back({{"name", s.name},
                      {"lattice_order", s.lattice_order},
                      {"sup_full", s.sup_full},
                      {"err_l2", s.err_l2},
                      {"err_sup", s.err_sup}});
    table.row({s.name, CsvBuilder::num(static_cast<long long>(s.lattice_order)),
               CsvBuilder::num(s.sup_full), CsvBuilder::num(s.err_l2),
               CsvBuilder::num(s.err_sup)});
  }
  root["result"] = {
      {"met", res.met},
      {"epsilon", res.epsilon},
      {"r", res.r},
      {"omega",
       {{"n1", res.projection.omega.n1},
        {"n2", res.projection.omega.n2},
        {"value", res.projection.value},
        {"order", res.projection.order}}},
      {"stages", stages}};

  CsvBuilder profiles;
  profiles.row({"stage", "x", "u"});
  const auto xs = res.grid.nodes();
  for (const auto& s : res.stages)
    for (int i = 0; i < res.grid.n; ++i)
      profiles.row({s.name, CsvBuilder::num(xs[i]),
                    CsvBuilder::num(s.final_state[i])});
  for (int i = 0; i < res.grid.n; ++i)
    profiles.row({"target", CsvBuilder::num(xs[i]),
                  CsvBuilder::num(res.target_values[i])});

  out.artifacts.push_back({"stages.csv", table.str()});
  out.artifacts.push_back({"profiles.csv", profiles.str()});
}

void run_relax(const ExperimentSpec& spec, const std::string& hash,
               RunResult& out, json& root) {
  const RelaxStudyResult res = relax_study(spec.relax, hash);
  out.checks = res.checks;
  CsvBuilder csv;
  csv.row({"m", "error"});
  for (std::size_t i = 0; i < res.m.size(); ++i)
    csv.row({CsvBuilder::num(static_cast<long long>(res.m[i])),
             CsvBuilder::num(res.error[i])});
  root["result"] = {{"m", res.m},
                    {"error", res.error},
                    {"epsilon", res.epsilon},
                    {"residual_bound", res.residual_bound}};
  out.artifacts.push_back({"relax.csv", csv.str()});
}

void run_extension(const ExperimentSpec& spec, const std::string& hash,
                   RunResult& out, json& root) {
  const ExtensionStudyResult res = extension_study(spec.extension, hash);
  out.checks = res.checks;
  CsvBuilder csv;
  csv.row({"level", "dt", "theta", "mismatch"});
  for (std::size_t i = 0; i < res.mismatch.size(); ++i)
    csv.row({CsvBuilder::num(static_cast<long long>(i)),
             CsvBuilder::num(res.dt[i]), CsvBuilder::num(res.theta[i]),
             CsvBuilder::num(res.mismatch[i])});
  root["result"] = {
      {"dt", res.dt}, {"theta", res.theta}, {"mismatch", res.mismatch}};
  out.artifacts.push_back({"extension.csv", csv.str()});
}

void run_locality(const ExperimentSpec& spec, const std::string& hash,
                  RunResult& out, json& root) {
  LocalityStudy st = spec.locality;
  st.seed = spec.seed;
  const LocalityResult res = locality_check(st, hash);
  out.checks = res.checks;
  CsvBuilder csv;
  csv.row({"rho", "effect"});
  for (std::size_t i = 0; i < res.rho.size(); ++i)
    csv.row({CsvBuilder::num(res.rho[i]), CsvBuilder::num(res.effect[i])});
  root["result"] = {{"rho", res.rho}, {"effect", res.effect}};
  out.artifacts.push_back({"locality.csv", csv.str()});
}

void run_lattice(const ExperimentSpec& spec, const std::string& hash,
                 RunResult& out, json& root) {
  const FrequencySet set = enumerate_lattice(spec.lattice_k, spec.basis);
  CsvBuilder csv;
  csv.row({"n1", "n2", "value", "order"});
  for (const auto& f : set.sorted_by_value())
    csv.row({CsvBuilder::num(static_cast<long long>(f.n1)),
             CsvBuilder::num(static_cast<long long>(f.n2)),
             CsvBuilder::num(f.value(spec.basis)),
             CsvBuilder::num(static_cast<long long>(f.order()))});
  out.checks.push_back(lattice_gap_check(
      spec.basis, spec.gap_order, spec.gap_upper,
      spec.tolerance("lattice_max_gap", 0.1), hash));
  root["result"] = {{"order", spec.lattice_k},
                    {"count", set.size()},
                    {"dimension", set.dimension()}};
  out.artifacts.push_back({"lattice.csv", csv.str()});
}

void run_verify(const ExperimentSpec& spec, const std::string& hash,
                RunResult& out, json& root) {
  SolverConfig cfg = solver_config(spec);
  const TrigPoly u0_poly =
      spec.u0.is_zero()
          ? TrigPoly::harmonic(spec.basis, LatticeFrequency{1, 0}, 0.0, 0.1)
          : spec.u0;
  const auto u0 = u0_poly.evaluate(spec.grid.nodes());
  const GridTrajectory traj = solve(cfg, u0);
  const GridTrajectory exact = cole_hopf_solve(cfg, u0);
  double worst = 0.0;
  const std::size_t count = std::min(traj.states.size(), exact.states.size());
  for (std::size_t i = 0; i < count; ++i)
    worst = std::max(worst,
                     sup_norm(diff_values(traj.states[i], exact.states[i])));
  out.checks.push_back(make_check("closed-form-sup-error", worst,
                                  spec.tolerance("oracle_sup", 1e-6), 0.0,
                                  hash));
  auto more = apriori_checks(
      traj, spec.tolerance("max_principle_rel_slack", 1e-6), hash);
  out.checks.insert(out.checks.end(), more.begin(), more.end());

  auto ladder = span_ladder_checks(spec.basis, 5, hash);
  out.checks.insert(out.checks.end(), ladder.begin(), ladder.end());
  auto ids = identity_residual_checks(
      spec.basis, 6, spec.tolerance("identity_residual", 1e-12), hash);
  out.checks.insert(out.checks.end(), ids.begin(), ids.end());
  out.checks.push_back(lattice_gap_check(
      spec.basis, spec.gap_order, spec.gap_upper,
      spec.tolerance("lattice_max_gap", 0.1), hash));

  root["result"] = {{"checks_run", out.checks.size()}};
}

// ---------------------------------------------------------------------------
// Sweeps: one scalar error per axis value, decreasing over the tail.

std::vector<double> sweep_projection_modes(const ExperimentSpec& spec,
                                           const std::vector<double>& values) {
  const SteeringSpec& st = spec.steering;
  st.validate();
  const ControlSchedule eta0 = straight_line_control(
      st.u0, st.uhat, st.horizon, st.mu, st.h ? &*st.h : nullptr);
  const ControlSchedule eta_n =
      spatial_cutoff(eta0, st.cutoff_radius, st.grid, st.time_samples);
  const LatticeFrequency omega =
      st.omega ? *st.omega
               : choose_projection_params(st.cutoff_radius, st.r, st.basis)
                     .omega;
  const double w = M_PI / omega.value(st.basis);
  const auto& sp = eta_n.samples();
  const auto xs = st.grid.nodes();

  std::vector<std::future<double>> work;
  for (double v : values) {
    work.push_back(std::async(std::launch::async, [&, v] {
      const ControlSchedule eta_p =
          fourier_project(eta_n, omega, static_cast<int>(v));
      // Time-L2 of the spatial L2 projection defect over one full period.
      std::vector<double> sq(sp.times.size());
      for (std::size_t i = 0; i < sp.times.size(); ++i) {
        const auto pv = eta_p.value_at(sp.times[i]).evaluate(xs);
        const double d =
            l2_interval(diff_function(st.grid, sp.values[i], pv), -w, w);
        sq[i] = d * d;
      }
      return std::sqrt(cumulative_trapezoid(sp.times, sq).back());
    }));
  }
  std::vector<double> err;
  for (auto& f : work) err.push_back(f.get());
  return err;
}

std::vector<double> sweep_cutoff_radius(const ExperimentSpec& spec,
                                        const std::vector<double>& values) {
  const SteeringSpec& st = spec.steering;
  st.validate();
  const ControlSchedule eta0 = straight_line_control(
      st.u0, st.uhat, st.horizon, st.mu, st.h ? &*st.h : nullptr);
  const LatticeFrequency omega =
      st.omega ? *st.omega
               : choose_projection_params(static_cast<int>(values.back()),
                                          st.r, st.basis)
                     .omega;
  SolverConfig cfg;
  cfg.mu = st.mu;
  cfg.grid = st.grid;
  cfg.dt = st.dt;
  cfg.t_final = st.horizon;
  cfg.snapshot_stride = 1 << 30;
  const auto u0 = st.u0.evaluate(st.grid.nodes());
  const auto target = st.uhat.evaluate(st.grid.nodes());

  std::vector<std::future<double>> work;
  for (double v : values) {
    work.push_back(std::async(std::launch::async, [&, v] {
      const ControlSchedule eta_n = spatial_cutoff(
          eta0, static_cast<int>(v), st.grid, st.time_samples);
      const ControlSchedule eta_p = fourier_project(eta_n, omega, st.modes);
      ForcingSchedule f = eta_p.to_forcing();
      if (st.h) f += st.h->to_forcing();
      const GridTrajectory traj = solve(cfg, u0, f);
      return l2_interval(
          diff_function(st.grid, traj.final_state(), target), -st.r, st.r);
    }));
  }
  std::vector<double> err;
  for (auto& f : work) err.push_back(f.get());
  return err;
}

std::vector<double> sweep_against_closed_form(
    const ExperimentSpec& spec, const std::vector<double>& values,
    bool vary_grid) {
  if (!spec.forcing_poly.empty())
    throw ConfigParseError("closed-form comparison requires an unforced run");
  std::vector<std::future<double>> work;
  for (double v : values) {
    work.push_back(std::async(std::launch::async, [&, v] {
      SolverConfig cfg = solver_config(spec);
      cfg.snapshot_stride = 1 << 30;
      if (vary_grid)
        cfg.grid.n = static_cast<int>(v);
      else
        cfg.dt = v;
      const auto u0 = spec.u0.evaluate(cfg.grid.nodes());
      const GridTrajectory traj = solve(cfg, u0);
      const GridTrajectory exact = cole_hopf_solve(cfg, u0);
      return sup_norm(
          diff_values(traj.final_state(), exact.final_state()));
    }));
  }
  std::vector<double> err;
  for (auto& f : work) err.push_back(f.get());
  return err;
}

void run_sweep(const ExperimentSpec& spec, const std::string& hash,
               RunResult& out, json& root) {
  if (spec.axis.values.empty())
    throw ConfigParseError("sweep needs at least one axis value");
  std::vector<double> values = spec.axis.values;
  std::sort(values.begin(), values.end());
  const std::string& axis = spec.axis.name;

  std::vector<double> err;
  bool ascending_improves = true;
  if (axis == "N") {
    err = sweep_projection_modes(spec, values);
  } else if (axis == "n") {
    err = sweep_cutoff_radius(spec, values);
  } else if (axis == "m") {
    RelaxStudy st = spec.relax;
    st.m_values.clear();
    for (double v : values) st.m_values.push_back(static_cast<int>(v));
    err = relax_study(st, hash).error;
  } else if (axis == "n_grid") {
    err = sweep_against_closed_form(spec, values, true);
  } else if (axis == "dt") {
    err = sweep_against_closed_form(spec, values, false);
    ascending_improves = false;  // smaller steps are better
  } else {
    throw ConfigParseError("unknown sweep axis: " + axis);
  }

  std::vector<double> ordered = err;
  if (!ascending_improves) std::reverse(ordered.begin(), ordered.end());
  append_decrease_checks(out.checks, "sweep-decrease", ordered, 3, 0.0, hash);

  CsvBuilder csv;
  csv.row({"axis", "value", "error"});
  for (std::size_t i = 0; i < values.size(); ++i)
    csv.row({axis, CsvBuilder::num(values[i]), CsvBuilder::num(err[i])});
  root["result"] = {{"axis", axis}, {"values", values}, {"error", err}};
  out.artifacts.push_back({"sweep.csv", csv.str()});
}

}  // namespace

RunResult run(const ExperimentSpec& spec) {
  const std::string hash = config_hash(spec);
  RunResult out;
  json root;
  root["spec"] = json::parse(experiment_to_json(spec));
  root["provenance"] = hash;

  if (spec.kind == "simulate") {
    run_simulate(spec, hash, out, root);
  } else if (spec.kind == "steer") {
    run_steer(spec, hash, out, root);
  } else if (spec.kind == "relax_study") {
    run_relax(spec, hash, out, root);
  } else if (spec.kind == "extension_study") {
    run_extension(spec, hash, out, root);
  } else if (spec.kind == "locality_study") {
    run_locality(spec, hash, out, root);
  } else if (spec.kind == "lattice_report") {
    run_lattice(spec, hash, out, root);
  } else if (spec.kind == "sweep") {
    run_sweep(spec, hash, out, root);
  } else if (spec.kind == "verify") {
    run_verify(spec, hash, out, root);
  } else {
    throw ConfigParseError("unknown experiment kind: " + spec.kind);
  }

  out.pass = all_pass(out.checks);
  root["checks"] = detail::jchecks(out.checks);
  root["pass"] = out.pass;
  out.artifacts.insert(out.artifacts.begin(),
                       {spec.kind + ".json", root.dump(2) + "\n"});
  return out;
}

}  // namespace lowmode
