#include "lowmode/solver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "lowmode/spectral.hpp"

namespace lowmode {

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// One right-hand-side evaluation of
//   du/dt = mu dxx u + N,   N = -(u+g)(dx u + dx g) + f + mu dxx g,
// together with the pointwise magnitudes the a-priori monitors need:
//   speed = max |u + g|
//   damp  = max |dx g|
//   drive = max |f + mu dxx g - g dx g|
// (the split N = -speed-term - damp*u + drive matches the linear-transport
// reading of the equation, whose sup-norm bound the harness checks).
struct RhsEval {
  std::vector<std::complex<double>> nhat;
  double max_u = 0.0;
  double speed = 0.0;
  double damp = 0.0;
  double drive = 0.0;
};

class Rhs {
 public:
  Rhs(const SolverConfig& cfg, const Spectral& sp, const ForcingSchedule& f,
      const ForcingSchedule& g)
      : cfg_(cfg),
        sp_(sp),
        f_eval_(f, cfg.grid, sp),
        g_eval_(g, cfg.grid, sp),
        f_(cfg.grid.n, 0.0),
        g0_(cfg.grid.n, 0.0),
        g1_(cfg.grid.n, 0.0),
        g2_(cfg.grid.n, 0.0),
        work_(cfg.grid.n, 0.0) {}

  RhsEval operator()(const std::vector<double>& u, double t) {
    const int n = cfg_.grid.n;
    if (!f_eval_.zero()) f_eval_.eval(t, 0, f_);
    if (!g_eval_.zero()) {
      g_eval_.eval(t, 0, g0_);
      g_eval_.eval(t, 1, g1_);
      g_eval_.eval(t, 2, g2_);
    }
    std::vector<double> ux = sp_.derivative(u, 1);

    RhsEval out;
    out.max_u = max_abs(u);
    for (int i = 0; i < n; ++i) {
      const double a = u[i] + g0_[i];
      const double c = f_[i] + cfg_.mu * g2_[i] - g0_[i] * g1_[i];
      out.speed = std::max(out.speed, std::fabs(a));
      out.damp = std::max(out.damp, std::fabs(g1_[i]));
      out.drive = std::max(out.drive, std::fabs(c));
      work_[i] = -a * (ux[i] + g1_[i]) + f_[i] + cfg_.mu * g2_[i];
    }
    out.nhat = sp_.forward(work_);
    if (cfg_.dealias) sp_.dealias(out.nhat);
    return out;
  }

 private:
  const SolverConfig& cfg_;
  const Spectral& sp_;
  ForcingEvaluator f_eval_;
  ForcingEvaluator g_eval_;
  std::vector<double> f_, g0_, g1_, g2_, work_;
};

}  // namespace

GridTrajectory solve(const SolverConfig& cfg, const std::vector<double>& u0,
                     const ForcingSchedule& f, const ForcingSchedule& g) {
  cfg.validate();
  const int n = cfg.grid.n;
  if (static_cast<int>(u0.size()) != n)
    throw WindowMismatchError("initial state does not match the grid");

  Spectral sp(cfg.grid);
  Rhs rhs(cfg, sp, f, g);

  GridTrajectory traj;
  traj.grid = cfg.grid;

  std::vector<double> u = u0;
  std::vector<std::complex<double>> uhat = sp.forward(u);
  double t = 0.0;

  RhsEval ev = rhs(u, 0.0);
  auto record_step = [&](double time, const RhsEval& e) {
    traj.step_times.push_back(time);
    traj.sup_u.push_back(e.max_u);
    traj.sup_a.push_back(e.speed);
    traj.sup_b.push_back(e.damp);
    traj.sup_c.push_back(e.drive);
  };
  record_step(0.0, ev);
  traj.times.push_back(0.0);
  traj.states.push_back(u);

  const int n_steps =
      std::max(1, static_cast<int>(std::ceil(cfg.t_final / cfg.dt - 1e-12)));
  const int nm = sp.modes();
  std::vector<double> efac(nm);
  std::vector<std::complex<double>> s1(nm), s2(nm);

  for (int step = 0; step < n_steps; ++step) {
    const double t_next = (step + 1 == n_steps)
                              ? cfg.t_final
                              : cfg.t_final * (step + 1) / n_steps;
    const double dt_macro = t_next - t;

    // Advective stability: substep so that h * max|u+g| <= cfl * dx.
    int subs = 1;
    if (ev.speed > 0.0) {
      const double allowed = cfg.cfl * cfg.grid.dx() / ev.speed;
      subs = std::max(1, static_cast<int>(std::ceil(dt_macro / allowed)));
    }
    if (subs > cfg.max_substeps)
      throw CflViolationError("advective speed " + std::to_string(ev.speed) +
                              " would need " + std::to_string(subs) +
                              " substeps at t=" + std::to_string(t));
    const double h = dt_macro / subs;
    for (int j = 0; j < nm; ++j) {
      const double k = sp.wavenumber(j);
      efac[j] = std::exp(-cfg.mu * k * k * h);
    }

    for (int s = 0; s < subs; ++s) {
      const double t0 = t + s * h;
      const double t1 = (s + 1 == subs) ? t_next : t0 + h;

      // Stage 1: Euler predictor pushed through the heat factor.
      for (int j = 0; j < nm; ++j) s1[j] = efac[j] * (uhat[j] + h * ev.nhat[j]);
      std::vector<double> u1 = sp.inverse(s1);
      RhsEval ev1 = rhs(u1, t1);

      // Stage 2: trapezoidal corrector in the moving frame.
      for (int j = 0; j < nm; ++j)
        s2[j] = efac[j] * uhat[j] +
                0.5 * h * (efac[j] * ev.nhat[j] + ev1.nhat[j]);
      uhat = s2;
      u = sp.inverse(uhat);

      ev = rhs(u, t1);
      record_step(t1, ev);
      if (!(ev.max_u < cfg.blowup_threshold))
        throw BlowUpError("state reached " + std::to_string(ev.max_u) +
                          " at t=" + std::to_string(t1));
    }
    t = t_next;

    if ((step + 1) % cfg.snapshot_stride == 0 || step + 1 == n_steps) {
      traj.times.push_back(t);
      traj.states.push_back(u);
    }
  }
  return traj;
}

GridFunction heat_convolve(const GridFunction& u, double mu, double t) {
  u.grid.validate();
  Spectral sp(u.grid);
  return {u.grid, sp.heat_multiply(u.values, mu, t)};
}

GridTrajectory cole_hopf_solve(const SolverConfig& cfg,
                               const std::vector<double>& u0) {
  cfg.validate();
  const int n = cfg.grid.n;
  if (static_cast<int>(u0.size()) != n)
    throw WindowMismatchError("initial state does not match the grid");

  double mean = 0.0, sup = 0.0;
  for (double v : u0) {
    mean += v;
    sup = std::max(sup, std::fabs(v));
  }
  mean /= n;
  if (std::fabs(mean) > 1e-10 * std::max(sup, 1.0))
    throw NonZeroMeanError(
        "logarithmic substitution needs a mean-zero state; mean = " +
        std::to_string(mean));

  Spectral sp(cfg.grid);
  // phi0 = exp(-F / (2 mu)) with F the mean-free antiderivative of u0.
  std::vector<double> F = sp.antiderivative_zero_at_origin(u0);
  std::vector<double> phi0(n);
  for (int i = 0; i < n; ++i) phi0[i] = std::exp(-F[i] / (2.0 * cfg.mu));
  std::vector<std::complex<double>> phi0_hat = sp.forward(phi0);

  // Mirror the snapshot times solve() would produce for this configuration.
  const int n_steps =
      std::max(1, static_cast<int>(std::ceil(cfg.t_final / cfg.dt - 1e-12)));
  std::vector<double> snap_times = {0.0};
  for (int step = 0; step < n_steps; ++step) {
    if ((step + 1) % cfg.snapshot_stride == 0 || step + 1 == n_steps)
      snap_times.push_back(step + 1 == n_steps
                               ? cfg.t_final
                               : cfg.t_final * (step + 1) / n_steps);
  }

  GridTrajectory traj;
  traj.grid = cfg.grid;
  for (double t : snap_times) {
    std::vector<std::complex<double>> phat = phi0_hat;
    sp.heat_multiply_inplace(phat, cfg.mu, t);
    std::vector<double> phi = sp.inverse(phat);
    std::vector<double> phix = sp.derivative(phi, 1);
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) {
      if (!(phi[i] > 0.0))
        throw NonPositivePhiError(
            "substituted state lost positivity at t=" + std::to_string(t));
      u[i] = -2.0 * cfg.mu * phix[i] / phi[i];
    }
    traj.times.push_back(t);
    traj.states.push_back(std::move(u));
    traj.step_times.push_back(t);
    traj.sup_u.push_back(max_abs(traj.states.back()));
    traj.sup_a.push_back(traj.sup_u.back());
    traj.sup_b.push_back(0.0);
    traj.sup_c.push_back(0.0);
  }
  return traj;
}

GridTrajectory duhamel(const ForcingSchedule& f, const SolverConfig& cfg) {
  cfg.validate();
  Spectral sp(cfg.grid);
  ForcingEvaluator fe(f, cfg.grid, sp);
  const int n = cfg.grid.n;
  const int nm = sp.modes();

  const int n_steps =
      std::max(1, static_cast<int>(std::ceil(cfg.t_final / cfg.dt - 1e-12)));

  GridTrajectory traj;
  traj.grid = cfg.grid;
  std::vector<std::complex<double>> acc(nm, 0.0);
  std::vector<double> fbuf(n, 0.0);
  fe.eval(0.0, 0, fbuf);
  std::vector<std::complex<double>> fhat = sp.forward(fbuf);

  traj.times.push_back(0.0);
  traj.states.push_back(std::vector<double>(n, 0.0));

  double t = 0.0;
  for (int step = 0; step < n_steps; ++step) {
    const double t_next = (step + 1 == n_steps)
                              ? cfg.t_final
                              : cfg.t_final * (step + 1) / n_steps;
    const double h = t_next - t;
    fe.eval(t_next, 0, fbuf);
    std::vector<std::complex<double>> fhat_next = sp.forward(fbuf);
    // Trapezoidal rule with exact propagation of the left endpoint:
    //   I(t+h) = E(h) I(t) + h/2 (E(h) f(t) + f(t+h)).
    for (int j = 0; j < nm; ++j) {
      const double k = sp.wavenumber(j);
      const double e = std::exp(-cfg.mu * k * k * h);
      acc[j] = e * acc[j] + 0.5 * h * (e * fhat[j] + fhat_next[j]);
    }
    fhat = std::move(fhat_next);
    t = t_next;
    if ((step + 1) % cfg.snapshot_stride == 0 || step + 1 == n_steps) {
      traj.times.push_back(t);
      traj.states.push_back(sp.inverse(acc));
    }
  }
  return traj;
}

}  // namespace lowmode
