#pragma once

#include <functional>
#include <map>
#include <vector>

#include "lowmode/grid.hpp"
#include "lowmode/spectral.hpp"
#include "lowmode/trig_poly.hpp"

namespace lowmode {

// Time-dependent forcing: a sum of exact parts (t -> TrigPoly, derivatives
// taken symbolically and evaluated pointwise, so incommensurable frequencies
// never wrap through the FFT) and sampled parts (piecewise linear in t,
// derivatives spectral, used for window-periodic data such as cutoff
// controls).
class ForcingSchedule {
 public:
  struct SampledPart {
    std::vector<double> times;                 // strictly increasing
    std::vector<std::vector<double>> values;   // one grid sample per time
  };

  ForcingSchedule() = default;

  static ForcingSchedule zero() { return {}; }
  static ForcingSchedule exact(std::function<TrigPoly(double)> poly_at);
  static ForcingSchedule constant(const TrigPoly& p);
  static ForcingSchedule sampled(SampledPart part);

  ForcingSchedule& operator+=(const ForcingSchedule& other);
  friend ForcingSchedule operator+(ForcingSchedule a,
                                   const ForcingSchedule& b) {
    a += b;
    return a;
  }

  bool is_zero() const {
    return exact_parts_.empty() && sampled_parts_.empty();
  }
  const std::vector<std::function<TrigPoly(double)>>& exact_parts() const {
    return exact_parts_;
  }
  const std::vector<SampledPart>& sampled_parts() const {
    return sampled_parts_;
  }

 private:
  std::vector<std::function<TrigPoly(double)>> exact_parts_;
  std::vector<SampledPart> sampled_parts_;
};

// Binds a schedule to a grid: caches per-frequency node tables for the exact
// parts and interpolates the sampled parts. value/deriv calls accumulate all
// parts; derivative order <= 2.
class ForcingEvaluator {
 public:
  ForcingEvaluator(const ForcingSchedule& schedule, const Grid& grid,
                   const Spectral& spectral);

  bool zero() const { return schedule_.is_zero(); }
  // out must have grid.n entries; values are accumulated into out when
  // accumulate is true, otherwise out is overwritten.
  void eval(double t, int deriv, std::vector<double>& out,
            bool accumulate = false);

 private:
  void eval_exact(const TrigPoly& p, int deriv, std::vector<double>& out);
  const std::pair<std::vector<double>, std::vector<double>>& tables(
      const LatticeFrequency& f, const FrequencyBasis& basis);

  ForcingSchedule schedule_;
  Grid grid_;
  const Spectral& spectral_;
  std::map<LatticeFrequency, std::pair<std::vector<double>, std::vector<double>>>
      tables_;
};

}  // namespace lowmode
