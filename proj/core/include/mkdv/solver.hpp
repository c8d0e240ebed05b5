#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "mkdv/grid.hpp"
#include "mkdv/potential.hpp"

namespace mkdv {

// Field at a time instant.
struct FieldState {
  double t = 0.0;
  FieldSample u;

  FieldState(double time, FieldSample field) : t(time), u(std::move(field)) {}
};

struct SolverConfig {
  LineGrid grid{256, M_PI};
  double dt = 1e-4;
  double t_end = 0.1;
  enum class Dealias { None, TwoThirds, Half } dealias = Dealias::TwoThirds;
  double alpha = 1.0;
  std::size_t record_stride = 16;
  double blowup_factor = 50.0;
};

// Pseudospectral integrating-factor RK4 stepper for
//   u_t = -d_x(u_xx + 2u^3 - b(x,t) u)
// on the periodic grid. The -u_xxx term is removed exactly by conjugating
// with e^{-i k^3 t} in Fourier space; the remaining flux is advanced by
// classical RK4 with b evaluated at the stage times.
class Stepper {
 public:
  Stepper(const SolverConfig& cfg, const PotentialSpec& b);

  void set_state(const FieldState& s);
  FieldState state() const;
  double t() const { return t_; }

  // Advances `steps` steps of cfg.dt; throws BlowUp when ||u||_inf exceeds
  // blowup_factor times the initial amplitude.
  void advance(std::size_t steps);

 private:
  void nonlinear(double t, const std::vector<std::complex<double>>& hat,
                 std::vector<std::complex<double>>& out);

  SolverConfig cfg_;
  PotentialSpec b_;
  double t_ = 0.0;
  double guard_ = 0.0;
  std::vector<std::complex<double>> hat_;
  std::vector<std::complex<double>> half_phase_;  // e^{i k^3 dt/2}
  std::vector<double> mask_;
  // stage scratch
  std::vector<std::complex<double>> sa_, sb_, sc_, sd_, stage_;
  std::vector<double> phys_;
};

FieldState step(const FieldState& s, const SolverConfig& cfg, const PotentialSpec& b);

struct DriftReport {
  double i1_drift = 0.0;
  double i3_drift = 0.0;
  double i5_drift = 0.0;
  // |I1(T) - I1(0) - int <b_x, A1(u)> dt| over the snapshot sequence (only
  // meaningful with b present; the b == 0 drifts are the conservation check).
  double momentum_law_residual = 0.0;
};

struct IntegrationResult {
  std::vector<FieldState> snapshots;
  DriftReport drift;
};

IntegrationResult integrate(const FieldState& u0, const SolverConfig& cfg,
                            const PotentialSpec& b);

// u(x,t) = alpha U(alpha x, alpha^3 t), b(x,t) = alpha^2 B(alpha x, alpha^3 t).
// The returned potential evaluates the line field directly (h = 1); the
// effective semiclassical constant is h = alpha.
struct RescaledProblem {
  FieldState u;
  PotentialSpec b;
  double effective_h = 1.0;
};
RescaledProblem rescale_to_line(const FieldState& U, const PotentialSpec& B, double alpha);

}  // namespace mkdv
