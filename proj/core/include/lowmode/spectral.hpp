#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "lowmode/grid.hpp"

namespace lowmode {

// Real FFT helpers on one grid. Plans are created once under a global planner
// lock; execution is reentrant, so one instance may be shared across threads.
class Spectral {
 public:
  explicit Spectral(const Grid& grid);
  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  const Grid& grid() const { return grid_; }
  int modes() const { return grid_.n / 2 + 1; }
  // Physical wavenumber of mode j on the window [-L, L).
  double wavenumber(int j) const { return j * M_PI / grid_.half_length; }

  std::vector<std::complex<double>> forward(const std::vector<double>& u) const;
  std::vector<double> inverse(std::vector<std::complex<double>> spec) const;

  // Zeroes modes above 2/3 of the resolved band.
  void dealias(std::vector<std::complex<double>>& spec) const;

  std::vector<double> derivative(const std::vector<double>& u,
                                 int order = 1) const;
  // Multiplies mode j by exp(-mu k_j^2 t): the exact heat propagator.
  std::vector<double> heat_multiply(const std::vector<double>& u, double mu,
                                    double t) const;
  void heat_multiply_inplace(std::vector<std::complex<double>>& spec, double mu,
                             double t) const;

  // Periodic antiderivative with the mean mode dropped, shifted to vanish at
  // x = 0 (a grid node).
  std::vector<double> antiderivative_zero_at_origin(
      const std::vector<double>& u) const;

 private:
  Grid grid_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lowmode
