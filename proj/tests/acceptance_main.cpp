// Acceptance gate: one line per criterion, PASS/FAIL, exit 0 only when all
// eight hold. Tolerances and budgets are pinned here on purpose; loosening
// them is a contract change, not a tuning knob.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lowmode/errors.hpp"
#include "lowmode/harness.hpp"
#include "lowmode/io.hpp"
#include "lowmode/lattice.hpp"
#include "lowmode/norms.hpp"
#include "lowmode/pipeline.hpp"
#include "lowmode/saturation.hpp"
#include "lowmode/schedule.hpp"
#include "lowmode/solver.hpp"
#include "lowmode/trig_poly.hpp"

using namespace lowmode;

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Nonlinear solve against the exact log-transform route, under 5 seconds.
Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const FrequencyBasis b{1.0, kSqrt2};
  SolverConfig cfg;
  cfg.mu = 0.1;
  cfg.grid = {kPi, 256};
  cfg.dt = 1e-3;
  cfg.t_final = 1.0;
  cfg.snapshot_stride = 1 << 30;
  const auto u0 = TrigPoly::harmonic(b, {1, 0}, 0.0, 0.1).evaluate(cfg.grid.nodes());

  const auto numeric = solve(cfg, u0);
  const auto exact = cole_hopf_solve(cfg, u0);
  const double err = sup_diff(numeric.final_state(), exact.final_state());
  const double elapsed = seconds_since(t0);

  Outcome o;
  o.pass = err < 1e-6 && elapsed < 5.0;
  o.detail = "sup err " + fmt(err) + " (tol 1e-6), " + fmt(elapsed) + " s (budget 5 s)";
  return o;
}

// ---------------------------------------------------------------------------
// 2. A-priori transport envelopes at relative slack 1e-6, free and forced.
Outcome criterion2() {
  const FrequencyBasis b{1.0, kSqrt2};
  Outcome o;
  o.pass = true;
  int total = 0;

  {
    SolverConfig cfg;
    cfg.mu = 0.1;
    cfg.grid = {kPi, 128};
    cfg.dt = 1e-3;
    cfg.t_final = 1.0;
    cfg.snapshot_stride = 1 << 30;
    TrigPoly p = TrigPoly::harmonic(b, {1, 0}, 0.0, 0.9);
    p.add_term({3, 0}, 0.4, 0.0);
    const auto traj = solve(cfg, p.evaluate(cfg.grid.nodes()));
    for (const auto& c : apriori_checks(traj, 1e-6, "free")) {
      ++total;
      if (!c.pass) {
        o.pass = false;
        o.detail += " [" + c.name + " " + fmt(c.lhs) + " > " + fmt(c.rhs) + "]";
      }
    }
  }
  {
    const double a = 0.5, mu = 0.3, T = 1.0;
    SolverConfig cfg;
    cfg.mu = mu;
    cfg.grid = {kPi, 128};
    cfg.dt = 1e-3;
    cfg.t_final = T;
    cfg.snapshot_stride = 1 << 30;
    TrigPoly uhat = TrigPoly::harmonic(b, {1, 0}, 0.0, a);
    const auto eta = straight_line_control(TrigPoly(b), uhat, T, mu);
    const std::vector<double> zero(cfg.grid.n, 0.0);
    const auto traj = solve(cfg, zero, eta.to_forcing());
    for (const auto& c : apriori_checks(traj, 1e-6, "forced")) {
      ++total;
      if (!c.pass) {
        o.pass = false;
        o.detail += " [" + c.name + " " + fmt(c.lhs) + " > " + fmt(c.rhs) + "]";
      }
    }
  }
  o.detail = std::to_string(total) + " envelope checks at slack 1e-6" + o.detail;
  return o;
}

// ---------------------------------------------------------------------------
// 3. Span ladder through order 5, exact identities through order 6, and the
//    order-30 frequency density gap below 0.1 on [0, 5].
Outcome criterion3() {
  const FrequencyBasis b{1.0, kSqrt2};
  Outcome o;
  o.pass = true;

  int ladder_count = 0;
  for (const auto& c : span_ladder_checks(b, 5, "acceptance")) {
    ++ladder_count;
    if (!c.pass) {
      o.pass = false;
      o.detail += " [" + c.name + "]";
    }
  }

  double worst_residual = 0.0;
  double covered = 0.0;
  for (const auto& c : identity_residual_checks(b, 6, 1e-12, "acceptance")) {
    if (c.name.find("residual") != std::string::npos)
      worst_residual = std::max(worst_residual, c.lhs);
    if (c.name.find("coverage") != std::string::npos) covered = c.rhs;
    if (!c.pass) {
      o.pass = false;
      o.detail += " [" + c.name + " " + fmt(c.lhs) + "]";
    }
  }

  const auto gap = lattice_gap_check(b, 30, 5.0, 0.1, "acceptance");
  if (!gap.pass) {
    o.pass = false;
    o.detail += " [gap " + fmt(gap.lhs) + " >= 0.1]";
  }

  o.detail = std::to_string(ladder_count) + " ladder orders, " +
             fmt(covered) + " identities (worst residual " +
             fmt(worst_residual) + ", tol 1e-12), density gap " +
             fmt(gap.lhs) + " < 0.1" + o.detail;
  return o;
}

// ---------------------------------------------------------------------------
// 4. Fast-switching averaging: errors eventually decrease in m and the m=64
//    error is below half the m=8 error, under two minutes.
Outcome criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  RelaxStudy study;
  study.basis = {1.0, 0.625};
  study.grid = {8.0 * kPi, 256};
  study.mu = 0.1;
  study.dt = 1.0 / 2048;
  study.t_final = 1.0;
  study.nu = 1.0;
  TrigPoly eta1(study.basis);
  eta1.add_term({2, 1}, 0.0, 1.3125);
  eta1.add_term({2, -1}, 0.0, 0.6875);
  study.eta1 = eta1;
  study.m_values = {8, 16, 32, 64};
  study.halving_factor = 0.5;

  const auto res = relax_study(study, "acceptance");
  const double elapsed = seconds_since(t0);

  Outcome o;
  o.pass = all_pass(res.checks) && elapsed < 120.0;
  o.detail = "errors";
  for (double e : res.error) o.detail += " " + fmt(e);
  o.detail += " over m 8..64; " + fmt(elapsed) + " s (budget 120 s)";
  for (const auto& c : res.checks)
    if (!c.pass) o.detail += " [" + c.name + " failed]";
  return o;
}

// ---------------------------------------------------------------------------
// 5. Coefficient absorption: coefficient-run vs absorbed-run terminal gap
//    halves when dt and theta halve jointly, across two refinements.
Outcome criterion5() {
  ExtensionStudy study;
  study.basis = {1.0, 0.625};
  study.grid = {8.0 * kPi, 256};
  study.mu = 0.1;
  study.dt = 1.0 / 8192;
  study.t_final = 1.0;
  study.nu = 1.0;
  TrigPoly eta1(study.basis);
  eta1.add_term({2, 1}, 0.0, 1.3125);
  eta1.add_term({2, -1}, 0.0, 0.6875);
  study.eta1 = eta1;
  study.oscillation = 4;
  study.levels = 3;
  study.ratio_bound = 0.55;  // "halves" with 10% numerical headroom

  const auto res = extension_study(study, "acceptance");

  Outcome o;
  o.pass = all_pass(res.checks);
  o.detail = "mismatch";
  for (double v : res.mismatch) o.detail += " " + fmt(v);
  o.detail += "; ratios";
  for (std::size_t i = 1; i < res.mismatch.size(); ++i)
    o.detail += " " + fmt(res.mismatch[i] / res.mismatch[i - 1]);
  o.detail += " (bound 0.55)";
  for (const auto& c : res.checks)
    if (!c.pass) o.detail += " [" + c.name + " failed]";
  return o;
}

// ---------------------------------------------------------------------------
// 6. Mode and depth sweeps are monotone over the last three doublings, and
//    projected controls stay inside the truncated frequency ladder.
Outcome criterion6() {
  static const char* kSweepTemplate = R"({
    "kind": "sweep",
    "basis": {"lambda1": 1.0, "lambda2": 1.4142135623730951},
    "steering": {
      "u0": [],
      "uhat": [{"n1": 1, "n2": 0, "sin": 0.2}, {"n1": 0, "n2": 1, "cos": 0.1}],
      "horizon": 1.0, "epsilon": 0.1, "r": 2.0, "mu": 0.5,
      "grid": {"half_length": 18.310543837086133, "n": 512},
      "dt": 0.002, "cutoff_radius": 6,
      "omega": {"n1": 3, "n2": -2},
      "modes": 16, "relax_depth": 0, "time_samples": 129
    },
    "axis": {"name": "AXIS", "values": [VALUES]}
  })";

  Outcome o;
  o.pass = true;

  const auto run_axis = [&](const std::string& axis, const std::string& values) {
    std::string text = kSweepTemplate;
    text.replace(text.find("AXIS"), 4, axis);
    text.replace(text.find("VALUES"), 6, values);
    const auto res = run(parse_experiment(text));
    if (!res.pass) {
      o.pass = false;
      for (const auto& c : res.checks)
        if (!c.pass) o.detail += " [" + axis + ":" + c.name + "]";
    }
  };
  run_axis("N", "2, 4, 8, 16, 32");
  run_axis("n", "1, 2, 4, 8");

  // Frequency containment of the projected control: multiples j*omega with
  // j <= N, hence lattice order <= N * order(omega).
  const FrequencyBasis b{1.0, kSqrt2};
  const LatticeFrequency omega{3, -2};
  const int N = 16;
  const Grid grid{18.310543837086133, 512};
  TrigPoly uhat(b);
  uhat.add_term({1, 0}, 0.0, 0.2);
  uhat.add_term({0, 1}, 0.1, 0.0);
  const auto eta = straight_line_control(TrigPoly(b), uhat, 1.0, 0.5);
  const auto proj = fourier_project(spatial_cutoff(eta, 6, grid, 33), omega, N);
  bool contained = true;
  for (double t : {0.0, 0.31, 0.75, 1.0}) {
    for (const auto& f : proj.value_at(t).frequencies().sorted_by_value()) {
      if (f.is_zero()) continue;
      bool multiple = false;
      for (int j = 1; j <= N; ++j) multiple = multiple || (f == j * omega);
      contained = contained && multiple && f.order() <= N * omega.order();
    }
  }
  if (!contained) {
    o.pass = false;
    o.detail += " [projected control leaves the truncated ladder]";
  }

  o.detail = "N-sweep {2..32} and n-sweep {1..8} monotone; projection inside "
             "order " + std::to_string(N * omega.order()) + o.detail;
  return o;
}

// ---------------------------------------------------------------------------
// 7. Steering quality is insensitive to the scoring half-width r, and every
//    projected run lands within 0.1 in L2 on [-r, r], under one minute.
Outcome criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  const FrequencyBasis b{1.0, kSqrt2};

  Outcome o;
  o.pass = true;
  std::vector<double> sups;
  o.detail = "projection err_l2";
  for (double r : {1.0, 2.0, 4.0}) {
    SteeringSpec spec;
    spec.basis = b;
    spec.u0 = TrigPoly(b);
    TrigPoly uhat(b);
    uhat.add_term({1, 0}, 0.0, 0.2);
    uhat.add_term({0, 1}, 0.1, 0.0);
    spec.uhat = uhat;
    spec.horizon = 1.0;
    spec.epsilon = 0.1;
    spec.r = r;
    spec.mu = 0.5;
    spec.grid = {18.310543837086133, 512};
    spec.dt = 2e-3;
    spec.cutoff_radius = 6;
    spec.omega = LatticeFrequency{3, -2};
    spec.modes = 16;
    spec.relax_depth = 0;

    const auto res = steer(spec);
    const auto& last = res.stages.back();
    if (!(last.err_l2 < 0.1) || !res.met) o.pass = false;
    sups.push_back(last.sup_full);
    o.detail += " " + fmt(last.err_l2);
  }

  double sup_min = sups[0], sup_max = sups[0];
  for (double s : sups) {
    sup_min = std::min(sup_min, s);
    sup_max = std::max(sup_max, s);
  }
  const double variation = sup_max / sup_min - 1.0;
  if (!(variation < 0.05)) o.pass = false;

  const double elapsed = seconds_since(t0);
  if (!(elapsed < 60.0)) o.pass = false;
  o.detail += " (tol 0.1) over r {1,2,4}; sup variation " + fmt(variation) +
              " (tol 0.05); " + fmt(elapsed) + " s (budget 60 s)";
  return o;
}

// ---------------------------------------------------------------------------
// 8. Far-field perturbations: influence on [-1, 1] nonincreasing in rho,
//    below 1e-3 at rho = L/2, and byte-identical across repeated runs.
Outcome criterion8() {
  LocalityStudy study;
  study.grid = {8.0 * kPi, 512};
  study.mu = 0.5;
  study.dt = 2e-3;
  study.t_final = 1.0;
  study.u0 = TrigPoly(FrequencyBasis{1.0, 0.625});
  study.rho_list = {kPi, 2.0 * kPi, 3.0 * kPi, 4.0 * kPi};
  study.r = 1.0;
  study.amplitude = 1.0;
  study.delta = 1e-3;
  study.seed = 0x5EED;

  const auto res = locality_check(study, "acceptance");

  Outcome o;
  o.pass = all_pass(res.checks);
  o.detail = "effects";
  for (double e : res.effect) o.detail += " " + fmt(e);
  o.detail += " for rho up to L/2 (far bound 1e-3)";
  for (const auto& c : res.checks)
    if (!c.pass) o.detail += " [" + c.name + " failed]";

  static const char* kLocalityJson = R"({
    "kind": "locality_study",
    "basis": {"lambda1": 1.0, "lambda2": 0.625},
    "seed": 24301,
    "locality": {
      "grid": {"half_length": 25.132741228718345, "n": 512},
      "mu": 0.5, "dt": 0.002, "t_final": 1.0,
      "rho_list": [3.141592653589793, 6.283185307179586,
                   9.42477796076938, 12.566370614359172],
      "r": 1.0, "amplitude": 1.0, "delta": 0.001
    }
  })";
  const auto spec = parse_experiment(kLocalityJson);
  const auto first = run(spec);
  const auto second = run(spec);
  bool identical = first.pass && second.pass &&
                   first.artifacts.size() == second.artifacts.size();
  if (identical) {
    for (std::size_t i = 0; i < first.artifacts.size(); ++i)
      identical = identical &&
                  first.artifacts[i].filename == second.artifacts[i].filename &&
                  first.artifacts[i].content == second.artifacts[i].content;
  }
  if (!identical) {
    o.pass = false;
    o.detail += " [repeated runs differ]";
  } else {
    o.detail += "; repeated runs byte-identical";
  }
  return o;
}

}  // namespace

int main() {
  struct Entry {
    const char* slug;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {"solver-vs-exact-route", criterion1},
      {"a-priori-envelopes", criterion2},
      {"algebra-ladder-identities-density", criterion3},
      {"fast-switching-averaging", criterion4},
      {"absorption-joint-refinement", criterion5},
      {"sweeps-monotone-and-containment", criterion6},
      {"steering-window-robustness", criterion7},
      {"far-field-locality-determinism", criterion8},
  };

  int failures = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    Outcome o;
    try {
      o = entries[i].fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("criterion-%zu %-36s %s  (%s)\n", i + 1, entries[i].slug,
                o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }

  if (failures) {
    std::printf("acceptance: %d of 8 criteria failed\n", failures);
    return 1;
  }
  std::printf("acceptance: all 8 criteria passed\n");
  return 0;
}
