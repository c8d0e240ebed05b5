#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "mkdv/soliton.hpp"

namespace mkdv {

// Dense symmetric discretization of a fourth-order self-adjoint operator on
// a periodic grid (Fourier differentiation matrices, symmetrized).
struct OperatorMatrix {
  enum class Kind { K, P };
  Eigen::MatrixXd m;
  LineGrid grid;
  Kind kind = Kind::K;
  SolitonParams params;  // for K
  double c_scalar = 0.0; // for P
};

// K_{c,a} = I5''(q) + (c1^2+c2^2) I3''(q) + c1^2 c2^2 I1''(q), i.e.
// 2(-d_x^2+c1^2)(-d_x^2+c2^2) + 20 d_x q^2 d_x
// + 20(-q_x^2 + (q^2)_xx + 3 q^4) - 12(c1^2+c2^2) q^2.
OperatorMatrix assemble_K(const SolitonParams& p, const LineGrid& grid);

// P(c) = (-d_x^2+1)(-d_x^2+c^2) + 10 d_x eta^2 d_x + 10(3 eta^2 - 2 eta^4)
// - 6(1+c^2) eta^2 with eta = sech x; the Hessian of H_{(c,1)} at eta.
OperatorMatrix assemble_P(double c, const LineGrid& grid);

// Default grid for spectral studies: period >= 40 / min|c| plus room for the
// positions.
LineGrid operator_grid(const SolitonParams& p, std::size_t n_points);

struct SpectrumSummary {
  int n_negative = 0;
  int kernel_dim = 0;
  double smallest_positive = 0.0;
  double continuous_threshold = 0.0;  // 2 c1^2 c2^2
  double kernel_tol = 0.0;
  std::vector<double> discrete_below_threshold;
  Eigen::VectorXd eigenvalues;  // ascending
};

SpectrumSummary spectrum_summary(const OperatorMatrix& op,
                                 double kernel_tol_factor = 1e-6);

// Minimum of <K v, v> / ||v||_H2^2 over the L2-orthogonal complement of the
// constraint fields (generalized eigenproblem with the spectral H^2 Gram
// matrix). Empty constraint list gives the unconstrained minimum.
double coercivity_estimate(const OperatorMatrix& op,
                           const std::vector<FieldSample>& constraints);

// The four symplectic constraint fields d_x^{-1} d_{a_j} q, d_x^{-1} d_{c_j} q.
std::vector<FieldSample> symplectic_constraints(const SolitonParams& p,
                                                const LineGrid& grid);

// Explicit decaying zero-solutions of K at the reference point a = (0,0),
// c = (0.5, 1.5): r1 = d_x Q, r2 = d_alpha Q evaluated at (alpha,delta) = (0, 1/2).
double reference_r1(double x);
double reference_r2(double x);
double reference_r1_dx(double x);
double reference_r2_dx(double x);

struct RootCountResult {
  int count = 0;
  std::vector<double> locations;
};

// Maddocks-Sachs count: sum over x of dim ker [r1 r1'; r2 r2'] for the
// reference case, by sign-change bisection of the Wronskian determinant.
RootCountResult root_count_reference(double x_min = -20.0, double x_max = 20.0,
                                     std::size_t scan_points = 80001);

struct AppendixCOptions {
  double margin = 1e-3;        // distance kept from z = +-1
  std::size_t n_points = 401;  // tanh-clustered residual grid
  double step_factor = 5e-3;   // FD step = factor * (1 - |z|)
};

struct AppendixCResult {
  std::array<double, 4> residual_sup{0, 0, 0, 0};
  std::array<bool, 4> bounded{false, false, false, false};
  std::array<double, 4> endpoint_slopes{0, 0, 0, 0};  // min over both ends
};

// Applies the rational-coefficient fourth-order operator Q(c) to the four
// explicit basis solutions by high-order finite differences (long double)
// and classifies their boundedness at z -> +-1. Throws InvalidC at c = 1.
AppendixCResult appendix_c_check(double c, const AppendixCOptions& opts = {});

}  // namespace mkdv
