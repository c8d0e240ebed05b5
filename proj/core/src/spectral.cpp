#include "mkdv/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace mkdv {

namespace {
// The FFTW planner is not thread-safe; plan creation/destruction is serialized.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

SpectralWorkspace::SpectralWorkspace(std::size_t n) : n_(n) {
  std::lock_guard<std::mutex> lock(planner_mutex());
  real_buf_ = fftw_alloc_real(n_);
  cplx_buf_ = fftw_alloc_complex(n_ / 2 + 1);
  plan_fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), real_buf_,
                                   static_cast<fftw_complex*>(cplx_buf_), FFTW_ESTIMATE);
  plan_inv_ = fftw_plan_dft_c2r_1d(static_cast<int>(n_),
                                   static_cast<fftw_complex*>(cplx_buf_), real_buf_,
                                   FFTW_ESTIMATE);
}

SpectralWorkspace::~SpectralWorkspace() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
  fftw_free(real_buf_);
  fftw_free(cplx_buf_);
}

void SpectralWorkspace::forward(const double* in, std::complex<double>* out) {
  std::memcpy(real_buf_, in, n_ * sizeof(double));
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(out, cplx_buf_, (n_ / 2 + 1) * sizeof(fftw_complex));
}

void SpectralWorkspace::inverse(const std::complex<double>* in, double* out) {
  std::memcpy(cplx_buf_, in, (n_ / 2 + 1) * sizeof(fftw_complex));
  fftw_execute(static_cast<fftw_plan>(plan_inv_));
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = real_buf_[j] * inv_n;
}

SpectralWorkspace& workspace_for(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<SpectralWorkspace>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<SpectralWorkspace>(n);
  return *slot;
}

FieldSample derivative(const FieldSample& u, int order) {
  const std::size_t n = u.grid.n();
  auto& ws = workspace_for(n);
  std::vector<std::complex<double>> hat(ws.n_modes());
  ws.forward(u.values.data(), hat.data());
  const auto& k = u.grid.k();
  const std::complex<double> i_unit(0.0, 1.0);
  for (std::size_t m = 0; m < hat.size(); ++m) {
    std::complex<double> mult = std::pow(i_unit * k[m], order);
    hat[m] *= mult;
  }
  if (order % 2 != 0) hat.back() = 0.0;  // Nyquist has no well-defined odd derivative
  FieldSample out(u.grid);
  ws.inverse(hat.data(), out.values.data());
  return out;
}

double sobolev_norm(const FieldSample& u, int s) {
  const std::size_t n = u.grid.n();
  auto& ws = workspace_for(n);
  std::vector<std::complex<double>> hat(ws.n_modes());
  ws.forward(u.values.data(), hat.data());
  const auto& k = u.grid.k();
  double sum = 0.0;
  for (std::size_t m = 0; m < hat.size(); ++m) {
    const double w = (m == 0 || m == n / 2) ? 1.0 : 2.0;
    const double mult = std::pow(1.0 + k[m] * k[m], s);
    sum += w * mult * std::norm(hat[m]);
  }
  return std::sqrt(sum * u.grid.dx() / static_cast<double>(n));
}

}  // namespace mkdv
