#include "lowmode/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lowmode/bump.hpp"

namespace lowmode {

ControlSchedule straight_line_control(const TrigPoly& u0, const TrigPoly& uhat,
                                      double horizon, double mu,
                                      const ControlSchedule* h) {
  if (!(horizon > 0.0))
    throw WindowMismatchError("steering horizon must be positive");
  require_same_basis(u0.basis(), uhat.basis());

  const TrigPoly a = u0;
  const TrigPoly b = tp_scale(uhat - u0, 1.0 / horizon);
  const TrigPoly a1 = tp_derivative(a), b1 = tp_derivative(b);
  const TrigPoly a2 = tp_derivative(a1), b2 = tp_derivative(b1);

  // u = a + t b:  du/dt - mu dxx u + u dx u
  //   = [b - mu a'' + a a'] + t [-mu b'' + a b' + b a'] + t^2 [b b'].
  TrigPoly q0 = b - tp_scale(a2, mu) + tp_multiply(a, a1);
  TrigPoly q1 =
      tp_scale(b2, -mu) + tp_multiply(a, b1) + tp_multiply(b, a1);
  TrigPoly q2 = tp_multiply(b, b1);

  ControlSchedule eta =
      ControlSchedule::polynomial({q0, q1, q2}, horizon);
  if (h != nullptr) eta = eta.added_to(h->scaled(-1.0));
  return eta;
}

ControlSchedule spatial_cutoff(const ControlSchedule& eta, int n_radius,
                               const Grid& grid, int time_samples) {
  grid.validate();
  if (n_radius < 1)
    throw WindowTooSmallError("cutoff radius must be at least 1");
  if (2.0 * n_radius > grid.half_length)
    throw WindowTooSmallError("cutoff support 2n exceeds the window");
  if (time_samples < 2)
    throw QuantizationTooCoarseError("cutoff needs at least two time nodes");
  if (!eta.is_exact())
    throw WindowMismatchError("spatial cutoff needs an exact schedule");

  const std::vector<double> xs = grid.nodes();
  std::vector<double> chi(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    chi[i] = cutoff_chi(xs[i] / n_radius);

  ForcingSchedule::SampledPart part;
  const double horizon = eta.horizon();
  for (int j = 0; j < time_samples; ++j) {
    const double t = horizon * j / (time_samples - 1);
    std::vector<double> vals = eta.value_at(t).evaluate(xs);
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] *= chi[i];
    part.times.push_back(t);
    part.values.push_back(std::move(vals));
  }
  return ControlSchedule::sampled(eta.basis(), grid, std::move(part), horizon);
}

ProjectionParams choose_projection_params(int n_radius, double rho,
                                          const FrequencyBasis& basis) {
  basis.validate();
  const double bound = M_PI / std::max(2.0 * n_radius, rho);
  LatticeFrequency omega = smallest_lattice_frequency_below(bound, basis);
  return {omega, omega.value(basis), omega.order()};
}

namespace {

// Rectangle-rule harmonics extraction over one full period of omega.
// xs/weights: quadrature nodes inside [-pi/omega, pi/omega) and their common
// spacing; vals: integrand samples at those nodes.
TrigPoly project_samples(const FrequencyBasis& basis,
                         const LatticeFrequency& omega, double omega_value,
                         int modes, const std::vector<double>& xs,
                         const std::vector<double>& vals, double dx) {
  TrigPoly out(basis);
  const double period = 2.0 * M_PI / omega_value;
  for (int j = 0; j <= modes; ++j) {
    double sc = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double ph = j * omega_value * xs[i];
      sc += vals[i] * std::cos(ph);
      ss += vals[i] * std::sin(ph);
    }
    const double scale = (j == 0 ? 1.0 : 2.0) * dx / period;
    out.add_term(j * omega, scale * sc, scale * ss);
  }
  out.canonicalize();
  return out;
}

struct QuadratureWindow {
  std::vector<double> xs;
  double dx = 0.0;
};

QuadratureWindow window_nodes(const Grid& grid, double half_period) {
  if (half_period > grid.half_length * (1.0 + 1e-12))
    throw WindowMismatchError(
        "projection period pi/omega exceeds the sampling window");
  QuadratureWindow w;
  w.dx = grid.dx();
  const double tol = 1e-9 * w.dx;
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.node(i);
    if (x >= -half_period - tol && x < half_period - tol) w.xs.push_back(x);
  }
  return w;
}

}  // namespace

ControlSchedule fourier_project(const ControlSchedule& eta_n,
                                const LatticeFrequency& omega, int modes) {
  const FrequencyBasis& basis = eta_n.basis();
  const double wv = omega.value(basis);
  if (!(wv > 0.0))
    throw WindowMismatchError("projection frequency must be positive");
  if (modes < 0)
    throw WindowMismatchError("projection mode count must be >= 0");
  const double half_period = M_PI / wv;

  if (!eta_n.is_exact()) {
    const Grid& grid = eta_n.sample_grid();
    QuadratureWindow w = window_nodes(grid, half_period);
    if (static_cast<int>(w.xs.size()) < 2 * (modes + 1))
      throw QuantizationTooCoarseError(
          "sampling grid cannot resolve the requested modes");
    const auto& part = eta_n.samples();
    std::vector<double> sub(w.xs.size());
    std::vector<TrigPoly> projected;
    for (const auto& vals : part.values) {
      std::size_t k = 0;
      const double tol = 1e-9 * w.dx;
      for (int i = 0; i < grid.n; ++i) {
        const double x = grid.node(i);
        if (x >= -half_period - tol && x < half_period - tol)
          sub[k++] = vals[i];
      }
      projected.push_back(
          project_samples(basis, omega, wv, modes, w.xs, sub, w.dx));
    }
    // Rebuild as an exact schedule, linear in t between sample nodes.
    std::vector<ScheduleSegment> segs;
    for (std::size_t i = 0; i + 1 < part.times.size(); ++i) {
      const double t0 = part.times[i], t1 = part.times[i + 1];
      TrigPoly slope = tp_scale(projected[i + 1] - projected[i],
                                1.0 / (t1 - t0));
      ScheduleSegment seg;
      seg.t0 = t0;
      seg.t1 = t1;
      seg.poly = {projected[i] - tp_scale(slope, t0), slope};
      segs.push_back(std::move(seg));
    }
    return ControlSchedule::from_segments(basis, std::move(segs),
                                          Smoothness::Smooth);
  }

  // Exact input: project every TrigPoly coefficient on an internal
  // equispaced quadrature grid spanning exactly one period.
  const int quad = std::max(4096, 8 * (modes + 1));
  const double dx = 2.0 * half_period / quad;
  std::vector<double> xs(quad);
  for (int i = 0; i < quad; ++i) xs[i] = -half_period + i * dx;

  auto project_poly = [&](const TrigPoly& p) {
    return project_samples(basis, omega, wv, modes, xs, p.evaluate(xs), dx);
  };
  std::vector<ScheduleSegment> segs;
  for (const auto& seg : eta_n.segments()) {
    ScheduleSegment out;
    out.t0 = seg.t0;
    out.t1 = seg.t1;
    for (const auto& p : seg.poly) out.poly.push_back(project_poly(p));
    if (seg.ramp_a) out.ramp_a = project_poly(*seg.ramp_a);
    if (seg.ramp_b) out.ramp_b = project_poly(*seg.ramp_b);
    segs.push_back(std::move(out));
  }
  return ControlSchedule::from_segments(basis, std::move(segs),
                                        eta_n.smoothness());
}

RelaxResult relax_level(const ControlSchedule& eta, double nu, int m,
                        const std::vector<TrigPoly>& gens,
                        const FrequencySet& g) {
  if (!eta.is_exact() || eta.smoothness() != Smoothness::PiecewiseConstant)
    throw QuantizationTooCoarseError(
        "relaxation needs a piecewise-constant schedule; quantize first");
  if (m < 1)
    throw QuantizationTooCoarseError("oscillation count must be >= 1");

  OscillationSchedule osc;
  osc.basis = eta.basis();
  osc.horizon = eta.horizon();
  osc.m = m;
  osc.breakpoints = {0.0};
  std::vector<TrigPoly> eta_values;
  std::vector<double> cuts;
  for (const auto& seg : eta.segments()) {
    const TrigPoly v =
        seg.poly.empty() ? TrigPoly(eta.basis()) : seg.poly.front();
    ConvexDecomposition d = convex_decompose(v, nu, gens, g);
    eta_values.push_back(d.eta);
    osc.decomps.push_back(std::move(d));
    osc.breakpoints.push_back(seg.t1);
    if (seg.t1 < eta.horizon()) cuts.push_back(seg.t1);
  }
  RelaxResult out{
      ControlSchedule::piecewise(std::move(eta_values), cuts, eta.horizon()),
      std::move(osc)};
  return out;
}

ControlSchedule mollified_zeta(const OscillationSchedule& zeta, double theta) {
  return zeta.zeta_schedule().mollify(theta, /*pin_zero_ends=*/true);
}

ControlSchedule absorb_zeta(const ControlSchedule& eta,
                            const OscillationSchedule& zeta, double theta) {
  ControlSchedule dz = mollified_zeta(zeta, theta).time_derivative();
  if (eta.is_exact() && eta.smoothness() == Smoothness::PiecewiseConstant)
    return eta.mollify(theta).added_to(dz);
  return eta.added_to(dz);
}

}  // namespace lowmode
