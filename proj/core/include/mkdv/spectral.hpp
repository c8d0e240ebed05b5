#pragma once

#include <complex>
#include <vector>

#include "mkdv/grid.hpp"

namespace mkdv {

// FFTW-backed transform pair (r2c/c2r) with per-instance work buffers.
// One workspace per thread per size; use the free functions below unless a
// long-running loop wants to own its buffers (the solver does).
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(std::size_t n);
  ~SpectralWorkspace();
  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

  std::size_t n() const { return n_; }
  std::size_t n_modes() const { return n_ / 2 + 1; }

  // Unnormalized r2c transform.
  void forward(const double* in, std::complex<double>* out);
  // c2r transform including the 1/n normalization.
  void inverse(const std::complex<double>* in, double* out);

 private:
  std::size_t n_;
  double* real_buf_;
  void* cplx_buf_;
  void* plan_fwd_;
  void* plan_inv_;
};

// Shared per-thread workspace for size n.
SpectralWorkspace& workspace_for(std::size_t n);

// Spectral m-th derivative (Nyquist mode zeroed for odd m).
FieldSample derivative(const FieldSample& u, int order);

// Spectral H^s norm: sqrt( sum_k (1+k^2)^s |u_hat(k)|^2 ) with the continuum
// normalization (s = 0 reproduces the L^2 norm).
double sobolev_norm(const FieldSample& u, int s);

// sqrt of sum_s<=2 contributions used by the modulation tracker; equals the
// multiplier form by Parseval.
inline double h2_norm(const FieldSample& u) { return sobolev_norm(u, 2); }

}  // namespace mkdv
