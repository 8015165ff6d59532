#include "lowmode/forcing.hpp"

#include <algorithm>
#include <cmath>

namespace lowmode {

ForcingSchedule ForcingSchedule::exact(
    std::function<TrigPoly(double)> poly_at) {
  ForcingSchedule s;
  s.exact_parts_.push_back(std::move(poly_at));
  return s;
}

ForcingSchedule ForcingSchedule::constant(const TrigPoly& p) {
  if (p.is_zero()) return {};
  return exact([p](double) { return p; });
}

ForcingSchedule ForcingSchedule::sampled(SampledPart part) {
  if (part.times.size() != part.values.size() || part.times.empty())
    throw WindowMismatchError("sampled schedule needs matching times/values");
  ForcingSchedule s;
  s.sampled_parts_.push_back(std::move(part));
  return s;
}

ForcingSchedule& ForcingSchedule::operator+=(const ForcingSchedule& other) {
  for (const auto& e : other.exact_parts_) exact_parts_.push_back(e);
  for (const auto& p : other.sampled_parts_) sampled_parts_.push_back(p);
  return *this;
}

ForcingEvaluator::ForcingEvaluator(const ForcingSchedule& schedule,
                                   const Grid& grid, const Spectral& spectral)
    : schedule_(schedule), grid_(grid), spectral_(spectral) {
  grid_.validate();
}

const std::pair<std::vector<double>, std::vector<double>>&
ForcingEvaluator::tables(const LatticeFrequency& f,
                         const FrequencyBasis& basis) {
  auto it = tables_.find(f);
  if (it != tables_.end()) return it->second;
  std::vector<double> cs(grid_.n), sn(grid_.n);
  const double v = f.value(basis);
  for (int i = 0; i < grid_.n; ++i) {
    const double w = v * grid_.node(i);
    cs[i] = std::cos(w);
    sn[i] = std::sin(w);
  }
  return tables_.emplace(f, std::make_pair(std::move(cs), std::move(sn)))
      .first->second;
}

void ForcingEvaluator::eval_exact(const TrigPoly& p, int deriv,
                                  std::vector<double>& out) {
  for (const auto& [f, t] : p.terms()) {
    const double v = f.value(p.basis());
    double c = t.c, s = t.s;
    // Rotate coefficients instead of differentiating tables:
    // (c cos + s sin)' = (v s) cos + (-v c) sin.
    for (int k = 0; k < deriv; ++k) {
      const double c2 = v * s, s2 = -v * c;
      c = c2;
      s = s2;
    }
    const auto& [cs, sn] = tables(f, p.basis());
    for (int i = 0; i < grid_.n; ++i) out[i] += c * cs[i] + s * sn[i];
  }
}

void ForcingEvaluator::eval(double t, int deriv, std::vector<double>& out,
                            bool accumulate) {
  if ((int)out.size() != grid_.n) out.assign(grid_.n, 0.0);
  else if (!accumulate) std::fill(out.begin(), out.end(), 0.0);

  for (const auto& part : schedule_.exact_parts())
    eval_exact(part(t), deriv, out);

  for (const auto& part : schedule_.sampled_parts()) {
    const auto& ts = part.times;
    std::vector<double> interp(grid_.n, 0.0);
    if (t <= ts.front()) {
      interp = part.values.front();
    } else if (t >= ts.back()) {
      interp = part.values.back();
    } else {
      const auto hi =
          std::upper_bound(ts.begin(), ts.end(), t) - ts.begin();
      const double t0 = ts[hi - 1], t1 = ts[hi];
      const double w = (t - t0) / (t1 - t0);
      for (int i = 0; i < grid_.n; ++i)
        interp[i] = (1.0 - w) * part.values[hi - 1][i] + w * part.values[hi][i];
    }
    if (deriv > 0) interp = spectral_.derivative(interp, deriv);
    for (int i = 0; i < grid_.n; ++i) out[i] += interp[i];
  }
}

}  // namespace lowmode
