#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lowmode/pipeline.hpp"

namespace lowmode {

// One verified inequality: pass is always recomputable as lhs <= rhs + slack.
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
  std::string provenance;  // config hash of the producing experiment
};

CheckReport make_check(const std::string& name, double lhs, double rhs,
                       double slack, const std::string& provenance);

bool all_pass(const std::vector<CheckReport>& checks);

// Terminal-state scoring against the target: sup-norm bound K over the whole
// window and L2 distance to uhat on [-r, r] against eps.
std::vector<CheckReport> check_targets(const GridFunction& u_final,
                                       const TrigPoly& uhat, double eps,
                                       double r, double k_bound,
                                       const std::string& provenance);

// Inequalities every trajectory must satisfy, evaluated from the per-step
// monitors: the transport bound
//   sup|u(t)| <= exp(int_0^t sup|dx g|) (sup|u0| + int_0^t sup|c|)
// with c = f + mu dxx g - g dx g, and its weighted-L2 consequence
//   ||u(T)||_{w,y} <= sqrt(2) * (transport bound at T)  for several centres y.
std::vector<CheckReport> apriori_checks(const GridTrajectory& traj,
                                        double relative_slack,
                                        const std::string& provenance);

// ---------------------------------------------------------------------------
// Studies

struct RelaxStudy {
  FrequencyBasis basis;
  Grid grid;
  double mu = 0.1;
  double dt = 5e-4;
  double t_final = 1.0;
  double nu = 1e-3;
  TrigPoly eta1{FrequencyBasis{}};  // constant-in-time control to relax
  int target_order = 0;             // 0 -> the base control space
  std::vector<int> m_values = {8, 16, 32, 64};
  double halving_factor = 0.5;      // last error < factor * first error
};

struct RelaxStudyResult {
  std::vector<int> m;
  std::vector<double> error;     // H1-distance of u^m(T) to the averaged run
  double epsilon = 1.0;          // decomposition epsilon actually used
  double residual_bound = 0.0;
  std::vector<CheckReport> checks;
};

RelaxStudyResult relax_study(const RelaxStudy& study,
                             const std::string& provenance);

struct ExtensionStudy {
  FrequencyBasis basis;
  Grid grid;
  double mu = 0.1;
  double dt = 1e-3;
  double t_final = 1.0;
  double nu = 1e-3;
  TrigPoly eta1{FrequencyBasis{}};
  int target_order = 0;
  int oscillation = 4;      // m of the zeta family
  double theta = 0.0;       // 0 -> widest admissible / 4
  int levels = 3;           // joint (dt, theta) halvings, >= 2
  double ratio_bound = 0.7; // mismatch must contract at least this much
};

struct ExtensionStudyResult {
  std::vector<double> dt, theta, mismatch;  // per refinement level
  std::vector<CheckReport> checks;
};

// Pairs the g-coefficient run (raw fast switching) with the plain run driven
// by the absorbed mollified control; the terminal L2 mismatch is O(dt+theta).
ExtensionStudyResult extension_study(const ExtensionStudy& study,
                                     const std::string& provenance);

struct LocalityStudy {
  Grid grid;
  double mu = 0.5;
  double dt = 2e-3;
  double t_final = 1.0;
  TrigPoly u0{FrequencyBasis{}};
  std::vector<double> rho_list;
  double r = 1.0;
  double amplitude = 1.0;
  double delta = 1e-3;  // required influence bound at the largest rho
  std::uint64_t seed = 0x5EED;
  int noise_modes = 8;
};

struct LocalityResult {
  std::vector<double> rho;
  std::vector<double> effect;  // sup_t ||u1(t)-u2(t)||_{L2([-r,r])}
  std::vector<CheckReport> checks;
};

// Seeded far-field perturbations of u0 and f vanishing on [-rho, rho]; the
// recorded influence on [-r, r] must be nonincreasing in rho and small at the
// largest rho.
LocalityResult locality_check(const LocalityStudy& study,
                              const std::string& provenance);

// Saturation ladder / identity / density checks shared by `verify` and the
// acceptance suite.
std::vector<CheckReport> span_ladder_checks(const FrequencyBasis& basis,
                                            int k_max,
                                            const std::string& provenance);
std::vector<CheckReport> identity_residual_checks(
    const FrequencyBasis& basis, int max_order, double tol,
    const std::string& provenance);
CheckReport lattice_gap_check(const FrequencyBasis& basis, int order,
                              double upper, double max_gap,
                              const std::string& provenance);

// ---------------------------------------------------------------------------
// Experiment plumbing

struct SweepAxis {
  std::string name;  // n | N | m | n_grid | dt
  std::vector<double> values;
};

struct ExperimentSpec {
  std::string kind;  // simulate | steer | relax_study | extension_study |
                     // locality_study | lattice_report | sweep | verify
  FrequencyBasis basis;

  // simulate / verify
  Grid grid;
  double mu = 0.1;
  double dt = 1e-3;
  double t_final = 1.0;
  int snapshot_stride = 16;
  TrigPoly u0{FrequencyBasis{}};
  std::vector<TrigPoly> forcing_poly;  // sum_d coeff[d] t^d, empty -> zero
  bool compare_cole_hopf = false;

  SteeringSpec steering;
  RelaxStudy relax;
  ExtensionStudy extension;
  LocalityStudy locality;

  int lattice_k = 3;
  int gap_order = 30;
  double gap_upper = 5.0;

  SweepAxis axis;

  std::uint64_t seed = 0x5EED;
  std::map<std::string, double> tolerances;  // all check bounds live here

  double tolerance(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
};

struct RunArtifact {
  std::string filename;
  std::string content;
};

struct RunResult {
  std::vector<CheckReport> checks;
  std::vector<RunArtifact> artifacts;
  bool pass = false;
};

// Executes the experiment fully in memory (no filesystem access), so failed
// runs never leave partial artifacts behind.
RunResult run(const ExperimentSpec& spec);

}  // namespace lowmode
