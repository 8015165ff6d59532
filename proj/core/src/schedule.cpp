#include "lowmode/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "lowmode/bump.hpp"

namespace lowmode {

namespace {

double boundary_tol(double horizon) { return 1e-12 * std::max(1.0, horizon); }

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

TrigPoly zero_poly(const FrequencyBasis& b) { return TrigPoly(b); }

TrigPoly eval_segment(const FrequencyBasis& basis, const ScheduleSegment& seg,
                      double t) {
  TrigPoly v(basis);
  double tp = 1.0;
  for (const TrigPoly& c : seg.poly) {
    v += tp_scale(c, tp);
    tp *= t;
  }
  if (seg.has_ramp()) {
    const double w = seg.t1 - seg.t0;
    const double tau = std::clamp((t - seg.t0) / w, 0.0, 1.0);
    if (seg.ramp_a) v += tp_scale(*seg.ramp_a, smoothstep01(tau));
    if (seg.ramp_b) v += tp_scale(*seg.ramp_b, smoothstep01_deriv(tau) / w);
  }
  return v;
}

void check_contiguous(const std::vector<ScheduleSegment>& segs,
                      double horizon) {
  const double tol = boundary_tol(horizon);
  if (segs.empty()) throw WindowMismatchError("schedule has no segments");
  if (!near(segs.front().t0, 0.0, tol) || !near(segs.back().t1, horizon, tol))
    throw WindowMismatchError("schedule segments do not cover [0, T]");
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (!(segs[i].t1 > segs[i].t0))
      throw WindowMismatchError("schedule segment has non-positive width");
    if (i > 0 && !near(segs[i].t0, segs[i - 1].t1, tol))
      throw WindowMismatchError("schedule segments are not contiguous");
  }
}

}  // namespace

ControlSchedule ControlSchedule::constant(const TrigPoly& v, double horizon) {
  return polynomial({v}, horizon);
}

ControlSchedule ControlSchedule::polynomial(std::vector<TrigPoly> coeffs,
                                            double horizon) {
  if (coeffs.empty())
    throw WindowMismatchError("polynomial schedule needs a coefficient");
  if (!(horizon > 0.0))
    throw WindowMismatchError("schedule horizon must be positive");
  const FrequencyBasis basis = coeffs.front().basis();
  ScheduleSegment seg;
  seg.t0 = 0.0;
  seg.t1 = horizon;
  seg.poly = std::move(coeffs);
  std::vector<ScheduleSegment> segs;
  segs.push_back(std::move(seg));
  return from_segments(basis, std::move(segs), Smoothness::Smooth);
}

ControlSchedule ControlSchedule::piecewise(std::vector<TrigPoly> values,
                                           const std::vector<double>& cuts,
                                           double horizon) {
  if (values.empty())
    throw WindowMismatchError("piecewise schedule needs at least one value");
  if (cuts.size() + 1 != values.size())
    throw WindowMismatchError("piecewise schedule needs one more value than "
                              "interior breakpoints");
  if (!(horizon > 0.0))
    throw WindowMismatchError("schedule horizon must be positive");
  std::vector<ScheduleSegment> segs;
  double prev = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double end = (i + 1 == values.size()) ? horizon : cuts[i];
    if (!(end > prev))
      throw WindowMismatchError("piecewise breakpoints must increase");
    ScheduleSegment seg;
    seg.t0 = prev;
    seg.t1 = end;
    seg.poly = {values[i]};
    segs.push_back(std::move(seg));
    prev = end;
  }
  return from_segments(values.front().basis(), std::move(segs),
                       Smoothness::PiecewiseConstant);
}

ControlSchedule ControlSchedule::from_segments(
    const FrequencyBasis& basis, std::vector<ScheduleSegment> segments,
    Smoothness tag) {
  ControlSchedule s;
  s.exact_ = true;
  s.tag_ = tag;
  s.basis_ = basis;
  s.horizon_ = segments.empty() ? 0.0 : segments.back().t1;
  s.segments_ = std::move(segments);
  check_contiguous(s.segments_, s.horizon_);
  return s;
}

ControlSchedule ControlSchedule::sampled(const FrequencyBasis& basis,
                                         const Grid& grid,
                                         ForcingSchedule::SampledPart samples,
                                         double horizon) {
  grid.validate();
  if (samples.times.size() < 2 ||
      samples.times.size() != samples.values.size())
    throw WindowMismatchError("sampled schedule needs matching times/values");
  for (const auto& v : samples.values)
    if (static_cast<int>(v.size()) != grid.n)
      throw WindowMismatchError("sample does not match the grid");
  ControlSchedule s;
  s.exact_ = false;
  s.tag_ = Smoothness::Smooth;
  s.basis_ = basis;
  s.horizon_ = horizon;
  s.grid_ = grid;
  s.samples_ = std::move(samples);
  return s;
}

const Grid& ControlSchedule::sample_grid() const {
  if (exact_) throw WindowMismatchError("exact schedule has no sample grid");
  return grid_;
}

const ForcingSchedule::SampledPart& ControlSchedule::samples() const {
  if (exact_) throw WindowMismatchError("exact schedule has no samples");
  return samples_;
}

TrigPoly ControlSchedule::value_at(double t) const {
  if (!exact_)
    throw WindowMismatchError("sampled schedule has no exact values");
  const double tc = std::clamp(t, 0.0, horizon_);
  // Last segment with t0 <= tc (half-open convention, last closed at T).
  std::size_t lo = 0, hi = segments_.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (segments_[mid].t0 <= tc)
      lo = mid;
    else
      hi = mid;
  }
  return eval_segment(basis_, segments_[lo], tc);
}

std::vector<double> ControlSchedule::switch_times() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < segments_.size(); ++i)
    out.push_back(segments_[i].t0);
  return out;
}

ControlSchedule ControlSchedule::scaled(double c) const {
  ControlSchedule out = *this;
  if (exact_) {
    for (auto& seg : out.segments_) {
      for (auto& p : seg.poly) p *= c;
      if (seg.ramp_a) *seg.ramp_a *= c;
      if (seg.ramp_b) *seg.ramp_b *= c;
    }
  } else {
    for (auto& v : out.samples_.values)
      for (double& x : v) x *= c;
  }
  return out;
}

ControlSchedule ControlSchedule::added_to(const ControlSchedule& other) const {
  if (!exact_ || !other.exact_)
    throw WindowMismatchError("schedule addition needs exact operands");
  const double tol = boundary_tol(horizon_);
  if (!near(horizon_, other.horizon_, tol))
    throw WindowMismatchError("schedule horizons differ");
  require_same_basis(basis_, other.basis_);

  std::vector<double> bounds = {0.0};
  auto push_bound = [&](double t) {
    for (double b : bounds)
      if (near(b, t, tol)) return;
    bounds.push_back(t);
  };
  for (const auto& seg : segments_) push_bound(seg.t1);
  for (const auto& seg : other.segments_) push_bound(seg.t1);
  std::sort(bounds.begin(), bounds.end());

  auto segment_at = [&](const ControlSchedule& s,
                        double mid) -> const ScheduleSegment& {
    for (const auto& seg : s.segments_)
      if (seg.t0 - tol <= mid && mid < seg.t1 + tol) {
        if (mid < seg.t1 - tol || &seg == &s.segments_.back()) return seg;
      }
    return s.segments_.back();
  };

  std::vector<ScheduleSegment> segs;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const double a = bounds[i], b = bounds[i + 1];
    const double mid = 0.5 * (a + b);
    const ScheduleSegment& sa = segment_at(*this, mid);
    const ScheduleSegment& sb = segment_at(other, mid);
    for (const ScheduleSegment* s : {&sa, &sb}) {
      if (s->has_ramp() && !(near(s->t0, a, tol) && near(s->t1, b, tol)))
        throw WindowMismatchError(
            "schedule addition would cut a mollification ramp");
    }
    ScheduleSegment seg;
    seg.t0 = a;
    seg.t1 = b;
    seg.poly.resize(std::max(sa.poly.size(), sb.poly.size()),
                    zero_poly(basis_));
    for (std::size_t d = 0; d < sa.poly.size(); ++d) seg.poly[d] += sa.poly[d];
    for (std::size_t d = 0; d < sb.poly.size(); ++d) seg.poly[d] += sb.poly[d];
    auto merge_ramp = [&](std::optional<TrigPoly>& dst,
                          const std::optional<TrigPoly>& x,
                          const std::optional<TrigPoly>& y) {
      if (!x && !y) return;
      TrigPoly v = x ? *x : zero_poly(basis_);
      if (y) v += *y;
      dst = std::move(v);
    };
    merge_ramp(seg.ramp_a, sa.ramp_a, sb.ramp_a);
    merge_ramp(seg.ramp_b, sa.ramp_b, sb.ramp_b);
    segs.push_back(std::move(seg));
  }

  Smoothness tag;
  if (tag_ == Smoothness::PiecewiseConstant ||
      other.tag_ == Smoothness::PiecewiseConstant)
    tag = Smoothness::PiecewiseConstant;
  else if (tag_ == Smoothness::Mollified || other.tag_ == Smoothness::Mollified)
    tag = Smoothness::Mollified;
  else
    tag = Smoothness::Smooth;
  return from_segments(basis_, std::move(segs), tag);
}

ControlSchedule ControlSchedule::quantize(int pieces) const {
  if (pieces < 1)
    throw QuantizationTooCoarseError(
        "time quantization needs at least one interval");
  if (!exact_)
    throw WindowMismatchError("quantization needs an exact schedule");
  std::vector<TrigPoly> values;
  std::vector<double> cuts;
  for (int i = 0; i < pieces; ++i) {
    const double mid = horizon_ * (i + 0.5) / pieces;
    values.push_back(value_at(mid));
    if (i + 1 < pieces) cuts.push_back(horizon_ * (i + 1) / pieces);
  }
  return piecewise(std::move(values), cuts, horizon_);
}

ControlSchedule ControlSchedule::mollify(double theta,
                                         bool pin_zero_ends) const {
  if (!exact_)
    throw WindowMismatchError("mollification needs an exact schedule");
  if (tag_ != Smoothness::PiecewiseConstant) return *this;
  if (!(theta > 0.0)) throw RampTooWideError("ramp width must be positive");

  // Dwell values and the switch times where the value actually jumps.
  std::vector<TrigPoly> values;
  std::vector<double> switches;
  for (const auto& seg : segments_) {
    if (seg.has_ramp() || seg.poly.size() > 1)
      throw WindowMismatchError(
          "mollification needs a piecewise-constant schedule");
    TrigPoly v = seg.poly.empty() ? zero_poly(basis_) : seg.poly.front();
    if (values.empty()) {
      values.push_back(std::move(v));
      continue;
    }
    TrigPoly diff = v - values.back();
    if (diff.is_zero()) continue;
    switches.push_back(seg.t0);
    values.push_back(std::move(v));
  }

  const std::size_t count = switches.size() + (pin_zero_ends ? 2 : 0);
  if (count == 0) return *this;  // constant in time: nothing to smooth
  if (2.0 * theta * static_cast<double>(count) > horizon_)
    throw RampTooWideError("total ramp support 2*theta*switches exceeds the "
                           "horizon");
  const double tol = boundary_tol(horizon_);
  const double end_margin = pin_zero_ends ? theta : 0.0;
  for (std::size_t i = 0; i < switches.size(); ++i) {
    if (switches[i] - 0.5 * theta < end_margin - tol ||
        switches[i] + 0.5 * theta > horizon_ - end_margin + tol)
      throw RampTooWideError("ramp does not fit inside the horizon");
    if (i > 0 && switches[i] - switches[i - 1] < theta - tol)
      throw RampTooWideError("ramps at consecutive switches overlap");
  }

  std::vector<ScheduleSegment> segs;
  auto push_dwell = [&](double a, double b, const TrigPoly& v) {
    if (b - a <= tol) return;
    ScheduleSegment seg;
    seg.t0 = a;
    seg.t1 = b;
    if (!v.is_zero()) seg.poly = {v};
    segs.push_back(std::move(seg));
  };
  auto push_ramp = [&](double a, double b, const TrigPoly& from,
                       const TrigPoly& to) {
    ScheduleSegment seg;
    seg.t0 = a;
    seg.t1 = b;
    if (!from.is_zero()) seg.poly = {from};
    seg.ramp_a = to - from;
    segs.push_back(std::move(seg));
  };

  double cursor = 0.0;
  const TrigPoly zero = zero_poly(basis_);
  if (pin_zero_ends) {
    push_ramp(0.0, theta, zero, values.front());
    cursor = theta;
  }
  for (std::size_t i = 0; i < switches.size(); ++i) {
    push_dwell(cursor, switches[i] - 0.5 * theta, values[i]);
    push_ramp(switches[i] - 0.5 * theta, switches[i] + 0.5 * theta, values[i],
              values[i + 1]);
    cursor = switches[i] + 0.5 * theta;
  }
  if (pin_zero_ends) {
    push_dwell(cursor, horizon_ - theta, values.back());
    push_ramp(horizon_ - theta, horizon_, values.back(), zero);
  } else {
    push_dwell(cursor, horizon_, values.back());
  }
  return from_segments(basis_, std::move(segs), Smoothness::Mollified);
}

ControlSchedule ControlSchedule::time_derivative() const {
  if (!exact_)
    throw WindowMismatchError("time derivative needs an exact schedule");
  std::vector<ScheduleSegment> segs;
  for (const auto& seg : segments_) {
    if (seg.ramp_b)
      throw WindowMismatchError(
          "time derivative is only defined for first-order ramps");
    ScheduleSegment d;
    d.t0 = seg.t0;
    d.t1 = seg.t1;
    for (std::size_t k = 1; k < seg.poly.size(); ++k)
      d.poly.push_back(tp_scale(seg.poly[k], static_cast<double>(k)));
    if (seg.ramp_a) d.ramp_b = *seg.ramp_a;
    segs.push_back(std::move(d));
  }
  const Smoothness tag = (tag_ == Smoothness::PiecewiseConstant)
                             ? Smoothness::PiecewiseConstant
                             : tag_;
  return from_segments(basis_, std::move(segs), tag);
}

ForcingSchedule ControlSchedule::to_forcing() const {
  if (!exact_) return ForcingSchedule::sampled(samples_);
  auto self = std::make_shared<ControlSchedule>(*this);
  return ForcingSchedule::exact(
      [self](double t) { return self->value_at(t); });
}

void OscillationSchedule::validate() const {
  if (breakpoints.size() < 2 || breakpoints.size() != decomps.size() + 1)
    throw WindowMismatchError(
        "oscillation schedule needs one decomposition per interval");
  if (std::fabs(breakpoints.front()) > boundary_tol(horizon) ||
      std::fabs(breakpoints.back() - horizon) > boundary_tol(horizon))
    throw WindowMismatchError("oscillation breakpoints must span [0, T]");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw WindowMismatchError("oscillation breakpoints must increase");
  if (m < 1) throw WindowMismatchError("oscillation count must be >= 1");
  for (const auto& d : decomps)
    if (d.zetas.empty() || d.zetas.size() != d.weights.size())
      throw WindowMismatchError("decomposition has mismatched slots");
}

const TrigPoly& OscillationSchedule::zeta_at(double t) const {
  const double tc = std::clamp(t, 0.0, horizon);
  std::size_t i = 0;
  while (i + 2 < breakpoints.size() && breakpoints[i + 1] <= tc) ++i;
  const ConvexDecomposition& d = decomps[i];
  const double len = breakpoints[i + 1] - breakpoints[i];
  double tau = (tc - breakpoints[i]) / len * m;
  tau -= std::floor(tau);
  double cum = 0.0;
  for (std::size_t j = 0; j < d.zetas.size(); ++j) {
    cum += d.weights[j].value();
    if (tau < cum || j + 1 == d.zetas.size()) return d.zetas[j];
  }
  return d.zetas.back();
}

ControlSchedule OscillationSchedule::zeta_schedule() const {
  validate();
  const FrequencyBasis& b = decomps.front().eta.basis();
  std::vector<ScheduleSegment> segs;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const ConvexDecomposition& d = decomps[i];
    const double plen = (breakpoints[i + 1] - breakpoints[i]) / m;
    for (int q = 0; q < m; ++q) {
      const double pstart = breakpoints[i] + q * plen;
      double cum = 0.0;
      for (std::size_t j = 0; j < d.zetas.size(); ++j) {
        ScheduleSegment seg;
        seg.t0 = pstart + cum * plen;
        cum += d.weights[j].value();
        const bool last = (j + 1 == d.zetas.size());
        seg.t1 = last ? pstart + plen : pstart + cum * plen;
        if (q + 1 == m && last) seg.t1 = breakpoints[i + 1];
        if (!d.zetas[j].is_zero()) seg.poly = {d.zetas[j]};
        segs.push_back(std::move(seg));
      }
    }
  }
  return ControlSchedule::from_segments(b, std::move(segs),
                                        Smoothness::PiecewiseConstant);
}

ControlSchedule OscillationSchedule::eta_schedule() const {
  validate();
  std::vector<TrigPoly> values;
  std::vector<double> cuts(breakpoints.begin() + 1, breakpoints.end() - 1);
  for (const auto& d : decomps) values.push_back(d.eta);
  return ControlSchedule::piecewise(std::move(values), cuts, horizon);
}

ControlSchedule OscillationSchedule::averaged_schedule() const {
  validate();
  std::vector<TrigPoly> values;
  std::vector<double> cuts(breakpoints.begin() + 1, breakpoints.end() - 1);
  for (const auto& d : decomps) values.push_back(averaged_control(d));
  return ControlSchedule::piecewise(std::move(values), cuts, horizon);
}

int OscillationSchedule::switch_count() const {
  int slots = 0;
  for (const auto& d : decomps)
    slots += m * static_cast<int>(d.zetas.size());
  return slots - 1;
}

}  // namespace lowmode
