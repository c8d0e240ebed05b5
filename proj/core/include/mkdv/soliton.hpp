#pragma once

#include <array>

#include "mkdv/grid.hpp"

namespace mkdv {

// Position/scale parameters of the 2-soliton manifold. Scales may carry
// signs; internally they are folded into the phase signs eps (the two
// parameterizations agree exactly), so evaluation always runs with
// 0 < |c_j|. Parameters must stay off the degenerate set: |c_j|, |c1 -+ c2|
// all above sep_tol.
struct SolitonParams {
  std::array<double, 2> a{0.0, 0.0};
  std::array<double, 2> c{1.0, 2.0};
  std::array<int, 2> eps{1, 1};
  double sep_tol = 1e-6;

  void validate() const;  // throws DegenerateParams
};

// Interaction phase shifts for the canonical component 0 < c1 < c2.
struct ShiftData {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double ahat1 = 0.0;
  double ahat2 = 0.0;
  double theta_value = 0.0;
};

// Single soliton profile c sech(c(x-a)) and its x-derivative.
double eta(double x, double a, double c);
double eta_dx(double x, double a, double c);

// Smoothed sign: +1 for s <= -1, -1 for s >= +1, quintic smoothstep between.
double theta_smooth(double s);

ShiftData shifts(const SolitonParams& p);

// Half of the symmetric 2-soliton decomposition Q(x,alpha,delta) =
// tau(x,alpha,delta) + tau(-x,-alpha,delta); evaluated in a form that stays
// finite for exponents up to ~700.
double tau_component(double x, double alpha, double delta);

// Symmetric profile Q(x, alpha, delta) = q2(x, (-alpha, alpha), (1-delta, 1+delta)).
double q2_sym(double x, double alpha, double delta);

// The bordered-determinant 2-soliton profile.
double q2(double x, const SolitonParams& p);

// Value and the four analytic parameter derivatives at one point.
struct Q2Jet {
  double q = 0.0;
  double da1 = 0.0, da2 = 0.0;
  double dc1 = 0.0, dc2 = 0.0;
  double dx() const { return -(da1 + da2); }
};
Q2Jet q2_jet(double x, const SolitonParams& p);

FieldSample q2_field(const SolitonParams& p, const LineGrid& grid);

struct Q2Partials {
  FieldSample q, da1, da2, dc1, dc2;
};
Q2Partials q2_partials(const SolitonParams& p, const LineGrid& grid);

// Sup-norm residuals of the three fundamental identities
//   d_x I1'(q) = -2 sum_j d_{a_j} q
//   d_x I3'(q) =  2 sum_j c_j^2 d_{a_j} q
//   q = sum_j (x-a_j) d_{a_j} q + sum_j c_j d_{c_j} q
// with d_x taken spectrally. Throws GridTooSmall when q does not decay at
// the grid edges.
struct IdentityResiduals {
  double magic1 = 0.0;
  double magic2 = 0.0;
  double magic3 = 0.0;
  double max() const;
};
IdentityResiduals identity_residuals(const SolitonParams& p, const LineGrid& grid,
                                     double edge_tol = 1e-8);

}  // namespace mkdv
