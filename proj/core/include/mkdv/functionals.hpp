#pragma once

#include <array>

#include "mkdv/grid.hpp"
#include "mkdv/potential.hpp"
#include "mkdv/soliton.hpp"

namespace mkdv {

// Symmetric antiderivative (1/2)(int_{-inf}^x - int_x^{+inf}) f; the unique
// decaying antiderivative when f integrates to zero. Throws NonZeroMean when
// |int f| exceeds mean_tol * ||f||_L2 * sqrt(2L).
FieldSample antiderivative(const FieldSample& f, double mean_tol = 1e-8);

// omega(u, v) = <u, d_x^{-1} v>.
double symplectic_form(const FieldSample& u, const FieldSample& v,
                       double mean_tol = 1e-8);

struct ConservedReport {
  double i0 = 0.0;
  double i1 = 0.0;
  double i3 = 0.0;
  double i5 = 0.0;
  double x_moment = 0.0;
  // Relative errors against the 2-soliton closed forms; filled by
  // compare_closed_form.
  std::array<double, 5> closed_form_errors{0, 0, 0, 0, 0};
};

ConservedReport conserved(const FieldSample& u, double edge_tol = 1e-8);

// Closed forms for an exact 2-soliton: I0 = 2pi, I_j = 2(-1)^{(j-1)/2}(c1^j+c2^j)/j,
// int x q^2 = 2 a1 c1 + 2 a2 c2 (scales folded as |c| with the phase signs).
ConservedReport conserved_closed_form(const SolitonParams& p);
ConservedReport compare_closed_form(ConservedReport measured, const SolitonParams& p);

// Variational derivative I_j'(u) for j in {1,3,5}.
FieldSample gradient(int j, const FieldSample& u);
// Hessian application I_j''(q) v.
FieldSample hessian_apply(int j, const FieldSample& q, const FieldSample& v);

// I_j for a single field (themselves; convenience used by tests).
double functional_value(int j, const FieldSample& u);

// Sup-norm residual of d_x I5'(u) = Lambda(u) d_x I3'(u) (the k = 2 step of
// the recursion); only k = 2 is implemented.
double hierarchy_residual(int k, const FieldSample& u);

// |LHS - RHS| for the three near-conservation identities
//   <I_j'(u), (b u)_x> = j-dependent combination of <b^(odd), A_k(u)>.
std::array<double, 3> near_conserved_residuals(const FieldSample& u,
                                               const PotentialSpec& b, double t);
// Linearized variant: <I_j''(q)v,(bq)_x> - <d_x I_j'(q), b v> = RHS'.
std::array<double, 3> near_conserved_linearized_residuals(const FieldSample& q,
                                                          const FieldSample& v,
                                                          const PotentialSpec& b,
                                                          double t);

struct InteractionOptions {
  std::size_t n_points = 1024;
  double margin_per_unit_c = 6.0;  // window extends max(margin/c1, margin/c2)
  double fd_step = 1e-5;
};

// B(a,c,t) = (1/2) int b(x,t) q2(x,a,c)^2 dx by quadrature on an adaptive
// window around the soliton positions.
double interaction_B(const SolitonParams& p, const PotentialSpec& b, double t,
                     const InteractionOptions& opts = {});
// (dB/da1, dB/da2, dB/dc1, dB/dc2) by central differences of the quadrature.
std::array<double, 4> grad_B(const SolitonParams& p, const PotentialSpec& b, double t,
                             const InteractionOptions& opts = {});

}  // namespace mkdv
