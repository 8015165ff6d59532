#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <vector>

#include "lowmode/convexify.hpp"
#include "lowmode/errors.hpp"
#include "lowmode/lattice.hpp"
#include "lowmode/saturation.hpp"
#include "lowmode/schedule.hpp"
#include "lowmode/trig_poly.hpp"

using namespace lowmode;

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

FrequencyBasis default_basis() { return FrequencyBasis{1.0, kSqrt2}; }

TrigPoly tone(const FrequencyBasis& b, int n1, int n2, double c, double s) {
  TrigPoly p(b);
  p.add_term({n1, n2}, c, s);
  return p;
}

// Scalar fingerprint of a schedule value: evaluate the polynomial at x0.
double at(const ControlSchedule& s, double t, double x0 = 0.37) {
  return s.value_at(t).evaluate(x0);
}

}  // namespace

TEST_SUITE("schedule") {

TEST_CASE("piecewise lookup is half-open and clamped at the ends") {
  const auto b = default_basis();
  const auto p0 = tone(b, 1, 0, 0.0, 1.0);
  const auto p1 = tone(b, 0, 1, 1.0, 0.0);
  const auto p2 = tone(b, 1, 1, 0.5, 0.5);
  const auto s = ControlSchedule::piecewise({p0, p1, p2}, {0.3, 0.7}, 1.0);

  CHECK(s.is_exact());
  CHECK(s.smoothness() == Smoothness::PiecewiseConstant);
  CHECK(s.horizon() == doctest::Approx(1.0));
  CHECK(s.switch_times() == std::vector<double>{0.3, 0.7});

  CHECK(at(s, 0.1) == doctest::Approx(at(s, 0.0)));
  CHECK(at(s, 0.3) == doctest::Approx(p1.evaluate(0.37)));  // half-open left edge
  CHECK(at(s, 0.95) == doctest::Approx(p2.evaluate(0.37)));
  CHECK(at(s, -5.0) == doctest::Approx(p0.evaluate(0.37)));  // clamped below
  CHECK(at(s, 5.0) == doctest::Approx(p2.evaluate(0.37)));   // clamped above
}

TEST_CASE("polynomial schedules evaluate in absolute time") {
  const auto b = default_basis();
  const auto c0 = tone(b, 1, 0, 0.0, 0.4);
  const auto c1 = tone(b, 1, 0, 0.0, -0.1);
  const auto c2 = tone(b, 2, 0, 0.0, 0.25);
  const auto s = ControlSchedule::polynomial({c0, c1, c2}, 2.0);
  CHECK(s.smoothness() == Smoothness::Smooth);

  for (double t : {0.0, 0.5, 1.3, 2.0}) {
    const double expect = c0.evaluate(0.37) + t * c1.evaluate(0.37) +
                          t * t * c2.evaluate(0.37);
    CHECK(at(s, t) == doctest::Approx(expect).epsilon(1e-14));
  }

  const auto ds = s.time_derivative();
  for (double t : {0.1, 0.9, 1.7}) {
    const double expect = c1.evaluate(0.37) + 2.0 * t * c2.evaluate(0.37);
    CHECK(at(ds, t) == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("quantize samples the midpoint of each constancy interval") {
  const auto b = default_basis();
  const auto c0 = tone(b, 1, 0, 0.0, 0.4);
  const auto c1 = tone(b, 1, 0, 0.0, -0.1);
  const auto s = ControlSchedule::polynomial({c0, c1}, 2.0);

  const int pieces = 4;
  const auto q = s.quantize(pieces);
  CHECK(q.smoothness() == Smoothness::PiecewiseConstant);
  CHECK(q.switch_times().size() == std::size_t(pieces - 1));
  for (int k = 0; k < pieces; ++k) {
    const double mid = 2.0 * (k + 0.5) / pieces;
    const double t_inside = 2.0 * (k + 0.25) / pieces;
    CHECK(at(q, t_inside) == doctest::Approx(at(s, mid)).epsilon(1e-14));
  }

  CHECK_THROWS_AS(s.quantize(0), QuantizationTooCoarseError);
}

TEST_CASE("mollify rounds each jump into a C1 ramp of width theta") {
  const auto b = default_basis();
  const auto A = tone(b, 1, 0, 0.0, 1.0);
  const auto B = tone(b, 1, 0, 0.0, -0.5);
  const auto pw = ControlSchedule::piecewise({A, B}, {0.5}, 1.0);
  const double theta = 0.2;
  const auto sm = pw.mollify(theta);

  CHECK(sm.smoothness() == Smoothness::Mollified);
  // Dwell values are untouched outside [0.4, 0.6].
  CHECK(at(sm, 0.25) == doctest::Approx(at(pw, 0.25)).epsilon(1e-14));
  CHECK(at(sm, 0.8) == doctest::Approx(at(pw, 0.8)).epsilon(1e-14));
  // The ramp passes through the midpoint value at the former switch.
  const double mid = 0.5 * (A.evaluate(0.37) + B.evaluate(0.37));
  CHECK(at(sm, 0.5) == doctest::Approx(mid).epsilon(1e-12));

  // The analytic time derivative matches central differences through the
  // ramp, including at its edges (C1 matching with the flat dwell).
  const auto dsm = sm.time_derivative();
  const double h = 1e-6;
  for (double t : {0.42, 0.47, 0.5, 0.55, 0.58}) {
    const double fd = (at(sm, t + h) - at(sm, t - h)) / (2.0 * h);
    CHECK(at(dsm, t) == doctest::Approx(fd).epsilon(5e-6));
  }
  CHECK(std::abs(at(dsm, 0.39)) < 1e-14);
  CHECK(std::abs(at(dsm, 0.61)) < 1e-14);

  // Ramps that would not fit are rejected.
  CHECK_THROWS_AS(pw.mollify(1.2), RampTooWideError);
  const auto crowded =
      ControlSchedule::piecewise({A, B, A}, {0.45, 0.55}, 1.0);
  CHECK_THROWS_AS(crowded.mollify(0.2), RampTooWideError);
}

TEST_CASE("mollify can pin the endpoints to zero") {
  const auto b = default_basis();
  const auto A = tone(b, 1, 0, 0.0, 1.0);
  const auto B = tone(b, 1, 0, 0.0, -0.5);
  const auto pw = ControlSchedule::piecewise({A, B}, {0.5}, 1.0);
  const auto sm = pw.mollify(0.1, /*pin_zero_ends=*/true);

  CHECK(std::abs(at(sm, 0.0)) < 1e-14);
  CHECK(std::abs(at(sm, 1.0)) < 1e-14);
  CHECK(at(sm, 0.25) == doctest::Approx(A.evaluate(0.37)).epsilon(1e-12));
}

TEST_CASE("addition refines breakpoints and refuses to slice ramps") {
  const auto b = default_basis();
  const auto A = tone(b, 1, 0, 0.0, 1.0);
  const auto B = tone(b, 1, 0, 0.0, -0.5);
  const auto C = tone(b, 0, 1, 0.3, 0.0);
  const auto D = tone(b, 0, 1, -0.2, 0.0);

  const auto s1 = ControlSchedule::piecewise({A, B}, {0.5}, 1.0);
  const auto s2 = ControlSchedule::piecewise({C, D}, {0.3}, 1.0);
  const auto sum = s1.added_to(s2);
  CHECK(sum.switch_times() == std::vector<double>{0.3, 0.5});
  CHECK(at(sum, 0.1) == doctest::Approx(at(s1, 0.1) + at(s2, 0.1)).epsilon(1e-14));
  CHECK(at(sum, 0.4) == doctest::Approx(at(s1, 0.4) + at(s2, 0.4)).epsilon(1e-14));
  CHECK(at(sum, 0.9) == doctest::Approx(at(s1, 0.9) + at(s2, 0.9)).epsilon(1e-14));

  const auto scaled = s1.scaled(-2.5);
  CHECK(at(scaled, 0.7) == doctest::Approx(-2.5 * at(s1, 0.7)).epsilon(1e-14));

  // s2 has a boundary at 0.3; the mollified s1 ramp around 0.5 is fine, but
  // a cut landing inside a ramp is refused.
  const auto sm = s1.mollify(0.2);  // ramp occupies [0.4, 0.6]
  CHECK_NOTHROW(sm.added_to(s2));
  const auto s3 = ControlSchedule::piecewise({C, D}, {0.5}, 1.0);
  CHECK_THROWS_AS(sm.added_to(s3), WindowMismatchError);
}

TEST_CASE("fast-switching family cycles through the control directions") {
  const auto b = default_basis();
  const auto gens = saturation_generators(b);
  const auto g = make_control_space(b);

  TrigPoly xi(b);
  xi.add_term({2, 0}, 0.8, 0.0);
  TrigPoly eta1 = tp_derivative(tp_multiply(xi, gens[0]));
  eta1.add_term({1, 0}, 0.0, 0.3);
  const auto d = convex_decompose(eta1, 0.5, gens, g);
  const std::size_t k = d.zetas.size();

  OscillationSchedule osc;
  osc.basis = b;
  osc.horizon = 1.0;
  osc.breakpoints = {0.0, 1.0};
  osc.decomps = {d};
  osc.m = 3;
  REQUIRE_NOTHROW(osc.validate());

  // Slot lookup: the j-th slot of each cycle dwells on zetas[j].
  const double cycle = 1.0 / osc.m;
  for (int c = 0; c < osc.m; ++c) {
    for (std::size_t j = 0; j < k; ++j) {
      const double t = c * cycle + (j + 0.5) * cycle / k;
      const auto diff = osc.zeta_at(t) + (-1.0 * d.zetas[j]);
      CHECK(diff.max_abs_coeff() <= 1e-12);
    }
  }

  const auto zs = osc.zeta_schedule();
  CHECK(zs.smoothness() == Smoothness::PiecewiseConstant);
  CHECK(zs.segments().size() == k * std::size_t(osc.m));
  CHECK(osc.switch_count() == int(zs.switch_times().size()));

  // The weighted dwell over one cycle averages to zero.
  TrigPoly avg(b);
  for (std::size_t j = 0; j < k; ++j) {
    const auto& seg = zs.segments()[j];
    avg += (seg.t1 - seg.t0) * seg.poly.front();
  }
  CHECK(avg.max_abs_coeff() <= 1e-12);

  // The slow component dwells on d.eta; the averaged control subtracts the
  // quadratic self-interaction of the cycle.
  const auto es = osc.eta_schedule();
  const auto eta_diff = es.value_at(0.4) + (-1.0 * d.eta);
  CHECK(eta_diff.max_abs_coeff() <= 1e-12);

  const auto as = osc.averaged_schedule();
  const auto avg_diff = as.value_at(0.4) + (-1.0 * averaged_control(d));
  CHECK(avg_diff.max_abs_coeff() <= 1e-12);

  // Malformed breakpoint lists are rejected.
  OscillationSchedule bad = osc;
  bad.breakpoints = {0.0, 0.5};
  CHECK_THROWS_AS(bad.validate(), WindowMismatchError);
}

}  // TEST_SUITE
