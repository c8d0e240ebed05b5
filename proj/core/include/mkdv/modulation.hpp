#pragma once

#include <array>
#include <limits>
#include <optional>
#include <vector>

#include "mkdv/functionals.hpp"
#include "mkdv/solver.hpp"

namespace mkdv {

struct ModulationFit {
  SolitonParams params;
  FieldSample residual;  // v = u - q2(., params)
  std::array<double, 4> ortho_residuals{0, 0, 0, 0};
  double h2_error = 0.0;
  int newton_iters = 0;
};

struct FitOptions {
  int max_iters = 25;
  double tol_factor = 1e-10;           // |phi_i| <= tol_factor * ||u|| * ||w_i||
  double capture_radius_factor = 0.1;  // radius = factor * min |c|
  // Largest admissible |p_fit - guess|; infinity for direct calls, the
  // capture radius when tracking.
  double max_correction = std::numeric_limits<double>::infinity();
  double mean_tol = 1e-6;
};

// Newton iteration on the four symplectic-orthogonality conditions
// <u - q, d_x^{-1} d_{a_j} q> = <u - q, d_x^{-1} d_{c_j} q> = 0 with the
// Jacobian assembled from the symplectic pairings of the q-partials
// (recomputed each iteration).
ModulationFit fit(const FieldSample& u, const SolitonParams& guess,
                  const FitOptions& opts = {});

struct FitRecord {
  double t = 0.0;
  SolitonParams params;
  double h2_error = 0.0;
  int iters = 0;
  std::array<double, 4> ortho_residuals{0, 0, 0, 0};
};

struct TrackResult {
  std::vector<FitRecord> records;
};

// Warm-started fits along a snapshot sequence; throws TrackingLost with the
// failing index when a fit diverges or needs a correction beyond the capture
// radius.
TrackResult track(const std::vector<FieldState>& snapshots, const SolitonParams& init,
                  const FitOptions& opts = {});

struct FDecomposition {
  // Coefficients of F_par in the basis (d_{a_1}q, d_{a_2}q, d_{c_1}q, d_{c_2}q):
  //   (da_j/dt - c_j^2 + dB/dc_j, dc_j/dt - dB/da_j).
  std::array<double, 4> coef_par{0, 0, 0, 0};
  FieldSample f_perp;
  double sup_f_perp = 0.0;
};

// Diagnostic decomposition of F_0 = sum (da_j - c_j^2) d_{a_j}q
// + sum dc_j d_{c_j}q - d_x(bq) into the symplectically parallel and
// orthogonal parts.
FDecomposition f_decomposition(const SolitonParams& p,
                               const std::array<double, 2>& a_dot,
                               const std::array<double, 2>& c_dot,
                               const PotentialSpec& b, double t, const LineGrid& grid,
                               const InteractionOptions& opts = {});

}  // namespace mkdv
