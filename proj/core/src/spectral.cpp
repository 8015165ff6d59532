#include "lowmode/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace lowmode {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Spectral::Impl {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  double* rbuf = nullptr;
  fftw_complex* cbuf = nullptr;
  int n = 0;

  explicit Impl(int n_in) : n(n_in) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    rbuf = fftw_alloc_real(n);
    cbuf = fftw_alloc_complex(n / 2 + 1);
    // FFTW_UNALIGNED keeps new-array execution valid on std::vector storage.
    fwd = fftw_plan_dft_r2c_1d(n, rbuf, cbuf,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd = fftw_plan_dft_c2r_1d(n, cbuf, rbuf,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(rbuf);
    fftw_free(cbuf);
  }
};

Spectral::Spectral(const Grid& grid) : grid_(grid) {
  grid_.validate();
  impl_ = std::make_unique<Impl>(grid_.n);
}

Spectral::~Spectral() = default;

std::vector<std::complex<double>> Spectral::forward(
    const std::vector<double>& u) const {
  if ((int)u.size() != grid_.n)
    throw WindowMismatchError("sample count differs from grid size");
  std::vector<double> in = u;  // r2c transforms may clobber input
  std::vector<std::complex<double>> out(modes());
  fftw_execute_dft_r2c(impl_->fwd, in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / grid_.n;
  for (auto& z : out) z *= scale;
  return out;
}

std::vector<double> Spectral::inverse(
    std::vector<std::complex<double>> spec) const {
  if ((int)spec.size() != modes())
    throw WindowMismatchError("mode count differs from grid size");
  std::vector<double> out(grid_.n);
  fftw_execute_dft_c2r(impl_->bwd,
                       reinterpret_cast<fftw_complex*>(spec.data()),
                       out.data());
  return out;
}

void Spectral::dealias(std::vector<std::complex<double>>& spec) const {
  const int cut = grid_.n / 3;
  for (int j = cut + 1; j < (int)spec.size(); ++j) spec[j] = 0.0;
}

std::vector<double> Spectral::derivative(const std::vector<double>& u,
                                         int order) const {
  auto spec = forward(u);
  for (int j = 0; j < (int)spec.size(); ++j) {
    std::complex<double> f(0.0, wavenumber(j));
    std::complex<double> m = 1.0;
    for (int p = 0; p < order; ++p) m *= f;
    spec[j] *= m;
  }
  if (order % 2 == 1) spec.back() = 0.0;  // Nyquist mode has no odd derivative
  return inverse(std::move(spec));
}

std::vector<double> Spectral::heat_multiply(const std::vector<double>& u,
                                            double mu, double t) const {
  auto spec = forward(u);
  heat_multiply_inplace(spec, mu, t);
  return inverse(std::move(spec));
}

void Spectral::heat_multiply_inplace(std::vector<std::complex<double>>& spec,
                                     double mu, double t) const {
  for (int j = 0; j < (int)spec.size(); ++j) {
    const double k = wavenumber(j);
    spec[j] *= std::exp(-mu * k * k * t);
  }
}

std::vector<double> Spectral::antiderivative_zero_at_origin(
    const std::vector<double>& u) const {
  auto spec = forward(u);
  spec[0] = 0.0;
  for (int j = 1; j < (int)spec.size(); ++j)
    spec[j] /= std::complex<double>(0.0, wavenumber(j));
  spec.back() = 0.0;
  auto out = inverse(std::move(spec));
  const double at_origin = out[grid_.n / 2];
  for (auto& v : out) v -= at_origin;
  return out;
}

}  // namespace lowmode
