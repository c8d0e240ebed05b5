#pragma once

#include <array>
#include <limits>
#include <vector>

#include "mkdv/functionals.hpp"
#include "mkdv/potential.hpp"

namespace mkdv {

struct EffectiveState {
  std::array<double, 2> a{0.0, 0.0};
  std::array<double, 2> c{0.0, 0.0};
  double t = 0.0;
  bool valid = true;
};

// |c1 -+ c2| > delta1 and delta1 < |c_j| < 1/delta1.
bool in_validity_window(const std::array<double, 2>& c, double delta1);

enum class Termination { ReachedEnd, HitValidityBoundary, StepFailure };

struct EffectiveTrajectory {
  std::vector<EffectiveState> states;
  Termination termination = Termination::ReachedEnd;
  // First time the validity window was violated (T0); NaN when never hit.
  double t0 = std::numeric_limits<double>::quiet_NaN();
};

// Coupled equations of motion on the line:
//   da_j/dt = c_j^2 - sgn(c_j) dB/dc_j,   dc_j/dt = sgn(c_j) dB/da_j,
// with B(a,c,t) = (1/2) int b(x,t) q2^2 dx evaluated by quadrature.
std::array<double, 4> rhs_coupled(const EffectiveState& s, const PotentialSpec& b,
                                  const InteractionOptions& opts = {});

// Decoupled h-independent system:
//   dA_j/dT = C_j^2 - b0(A_j, T),   dC_j/dT = C_j d_x b0(A_j, T).
std::array<double, 4> rhs_decoupled(const std::array<double, 2>& A,
                                    const std::array<double, 2>& C, double T,
                                    const PotentialSpec& b0);

struct EffectiveOptions {
  double dt = 1e-4;          // fixed RK4 step in the system's own time
  double delta1 = 0.05;
  bool halt_on_violation = true;
  std::size_t store_stride = 10;
  InteractionOptions interaction{};
};

enum class EffectiveKind { Coupled, Decoupled };

EffectiveTrajectory integrate_effective(EffectiveKind kind, const EffectiveState& init,
                                        const PotentialSpec& b, double t_end,
                                        const EffectiveOptions& opts = {});

// E(a, c) = -c^3/3 + c b0(a) for autonomous b0; conserved along the
// decoupled flow.
double decoupled_energy(double A, double C, const PotentialSpec& b0);

// -(|c1|^3 + |c2|^3)/3 + B(a,c,t); conserved by the coupled flow for
// autonomous b.
double effective_hamiltonian(const EffectiveState& s, const PotentialSpec& b,
                             const InteractionOptions& opts = {});

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct CrossingCase {
  double h = 0.0;
  double min_gap = 0.0;    // min_t |c2 - c1|
  double a_gap = 0.0;      // |a1 - a2| at the gap minimum
  double t_at_min = 0.0;   // in rescaled time T = h t
};

struct CrossingReport {
  std::vector<CrossingCase> cases;
  LinearFit log_gap_vs_inv_h;  // log(min gap) against 1/h
  double decoupled_cross_T = 0.0;
};

// Sweeps h over h_list, integrating the coupled system for initial data
// a = A0/h, c = C0 and b(x,t) = b0(hx, ht); requires that the decoupled
// system crosses (throws NoCrossing otherwise).
CrossingReport crossing_analysis(const PotentialSpec& b0,
                                 const std::array<double, 2>& A0,
                                 const std::array<double, 2>& C0,
                                 const std::vector<double>& h_list, double T_end,
                                 const EffectiveOptions& opts = {});

struct DecayRateResult {
  int vanishing_order = 0;   // ell_1 at the first zero of b0 ahead
  double a1 = 0.0;           // location of that zero
  bool exponential = false;  // ell_1 == 1
  double fitted_exponent = 0.0;  // slope of log|c| vs T (exp) or vs log T (power)
  double r2 = 0.0;
};

// Integrates the decoupled system from E = 0 data c(0) = sqrt(3 b0(a0)) and
// fits the decay law of c(T). Throws NoZeroAhead when b0 has no zero within
// search_range ahead of a0.
DecayRateResult decay_rate_experiment(const PotentialSpec& b0, double a0, double T_end,
                                      double search_range = 50.0,
                                      const EffectiveOptions& opts = {});

}  // namespace mkdv
