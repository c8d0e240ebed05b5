#include "mkdv/soliton.hpp"

#include <algorithm>
#include <cmath>

#include "mkdv/errors.hpp"
#include "mkdv/spectral.hpp"

namespace mkdv {

void SolitonParams::validate() const {
  const double c1 = c[0], c2 = c[1];
  const double m = std::min({std::abs(c1), std::abs(c2), std::abs(c1 - c2), std::abs(c1 + c2)});
  if (!(m > sep_tol))
    throw DegenerateParams("soliton parameters within sep_tol of the degenerate set");
}

double eta(double x, double a, double c) {
  const double z = c * (x - a);
  // sech via exp of -|z|; avoids cosh overflow for |z| ~ 700.
  const double e = std::exp(-std::abs(z));
  return c * 2.0 * e / (1.0 + e * e);
}

double eta_dx(double x, double a, double c) {
  const double z = c * (x - a);
  const double e = std::exp(-std::abs(z));
  const double sech = 2.0 * e / (1.0 + e * e);
  const double tanh = std::copysign((1.0 - e * e) / (1.0 + e * e), z);
  return -c * c * sech * tanh;
}

double theta_smooth(double s) {
  if (s <= -1.0) return 1.0;
  if (s >= 1.0) return -1.0;
  const double t = 0.5 * (s + 1.0);
  const double smooth = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
  return 1.0 - 2.0 * smooth;
}

ShiftData shifts(const SolitonParams& p) {
  p.validate();
  const double c1 = p.c[0], c2 = p.c[1];
  if (!(0.0 < c1 && c1 < c2))
    throw DegenerateParams("shifts: requires the canonical component 0 < c1 < c2");
  ShiftData s;
  const double r = std::log((c1 + c2) / (c2 - c1));
  s.alpha1 = r / c1;
  s.alpha2 = -r / c2;
  s.theta_value = theta_smooth(p.a[1] - p.a[0]);
  s.ahat1 = p.a[0] + s.alpha1 * s.theta_value;
  s.ahat2 = p.a[1] + s.alpha2 * s.theta_value;
  return s;
}

double tau_component(double x, double alpha, double delta) {
  if (delta == 0.0) return 0.0;
  const double p1 = (1.0 - delta) * (x + alpha);
  const double p2 = (1.0 + delta) * (x - alpha);
  const double p = std::max(p1, p2);
  const double num = (1.0 + delta) * std::exp(p1 - p) + (1.0 - delta) * std::exp(p2 - p);
  const double au = std::abs(x - delta * alpha);
  const double av = std::abs(delta * x - alpha);
  const double m = 2.0 * std::max(au, av);
  const double t_s = 1.0 - std::exp(-2.0 * au);  // ~ sinh scaled
  const double t_c = 1.0 + std::exp(-2.0 * av);  // ~ cosh scaled
  const double den = delta * delta * std::exp(2.0 * au - m) * t_s * t_s +
                     std::exp(2.0 * av - m) * t_c * t_c;
  return 2.0 * delta * std::exp(p - m) * num / den;
}

double q2_sym(double x, double alpha, double delta) {
  return tau_component(x, alpha, delta) + tau_component(-x, -alpha, delta);
}

namespace {

// Scaled monomials gamma1^m gamma2^n e^{-E} with gamma_j = s_j e^{g_j},
// E = 2(g1^+ + g2^+); every entry is bounded by 1 in magnitude.
struct Monomials {
  double t[3][3];
  double g1 = 0.0, g2 = 0.0;

  Monomials(double g1_, double g2_, double s1, double s2) : g1(g1_), g2(g2_) {
    const double ecap = 2.0 * (std::max(g1, 0.0) + std::max(g2, 0.0));
    for (int m = 0; m <= 2; ++m)
      for (int n = 0; n <= 2; ++n) {
        const double e = m * g1 + n * g2 - ecap;
        double sgn = 1.0;
        if (m % 2 == 1 && s1 < 0) sgn = -sgn;
        if (n % 2 == 1 && s2 < 0) sgn = -sgn;
        t[m][n] = sgn * std::exp(e);
      }
  }
};

struct Folded {
  double a1, a2, c1, c2;
  double sgn_c1, sgn_c2;  // chain-rule factors for the c derivatives
};

Folded fold(const SolitonParams& p) {
  p.validate();
  Folded f;
  f.a1 = p.a[0];
  f.a2 = p.a[1];
  f.sgn_c1 = p.c[0] < 0 ? -1.0 : 1.0;
  f.sgn_c2 = p.c[1] < 0 ? -1.0 : 1.0;
  f.c1 = std::abs(p.c[0]);
  f.c2 = std::abs(p.c[1]);
  return f;
}

}  // namespace

double q2(double x, const SolitonParams& p) {
  return q2_jet(x, p).q;
}

Q2Jet q2_jet(double x, const SolitonParams& p) {
  const Folded f = fold(p);
  const double c1 = f.c1, c2 = f.c2;
  const double s1 = p.eps[0] * f.sgn_c1;
  const double s2 = -(p.eps[1] * f.sgn_c2);  // gamma_2 carries the (-1)^{j-1} sign
  const double w1 = x - f.a1;
  const double w2 = x - f.a2;
  const Monomials M(-c1 * w1, -c2 * w2, s1, s2);
  const auto& T = M.t;

  const double cs = c1 + c2;
  const double kappa = (c2 - c1) / (2.0 * cs);
  const double dk_dc1 = -c2 / (cs * cs);
  const double dk_dc2 = c1 / (cs * cs);
  const double A = 1.0 / (4.0 * c1 * c2);
  const double B = 1.0 / (cs * cs);
  const double dB = -2.0 * B / cs;  // same for c1 and c2

  const double S = T[1][0] / c2 - T[0][1] / c1 - T[2][1] / c1 + T[1][2] / c2;
  const double N = kappa * S;
  const double D = (A - B) * (T[0][0] + T[2][2]) + A * (T[2][0] + T[0][2]) - 2.0 * B * T[1][1];

  const double dN_da1 = kappa * (c1 / c2 * (T[1][0] + T[1][2]) - 2.0 * T[2][1]);
  const double dN_da2 = kappa * (-c2 / c1 * (T[0][1] + T[2][1]) + 2.0 * T[1][2]);
  const double dS_dc1 = -w1 * T[1][0] / c2 + T[0][1] / (c1 * c1) +
                        T[2][1] * (2.0 * w1 * c1 + 1.0) / (c1 * c1) - w1 * T[1][2] / c2;
  const double dS_dc2 = -T[1][0] / (c2 * c2) + w2 * T[0][1] / c1 + w2 * T[2][1] / c1 -
                        T[1][2] * (2.0 * w2 * c2 + 1.0) / (c2 * c2);
  const double dN_dc1 = dk_dc1 * S + kappa * dS_dc1;
  const double dN_dc2 = dk_dc2 * S + kappa * dS_dc2;

  const double dD_da1 = 2.0 * c1 * ((A - B) * T[2][2] + A * T[2][0] - B * T[1][1]);
  const double dD_da2 = 2.0 * c2 * ((A - B) * T[2][2] + A * T[0][2] - B * T[1][1]);
  const double dA_dc1 = -A / c1;
  const double dA_dc2 = -A / c2;
  const double dD_dc1 = (dA_dc1 - dB) * (T[0][0] + T[2][2]) - 2.0 * w1 * (A - B) * T[2][2] +
                        dA_dc1 * (T[2][0] + T[0][2]) - 2.0 * w1 * A * T[2][0] -
                        2.0 * dB * T[1][1] + 2.0 * w1 * B * T[1][1];
  const double dD_dc2 = (dA_dc2 - dB) * (T[0][0] + T[2][2]) - 2.0 * w2 * (A - B) * T[2][2] +
                        dA_dc2 * (T[2][0] + T[0][2]) - 2.0 * w2 * A * T[0][2] -
                        2.0 * dB * T[1][1] + 2.0 * w2 * B * T[1][1];

  Q2Jet jet;
  jet.q = N / D;
  jet.da1 = (dN_da1 - jet.q * dD_da1) / D;
  jet.da2 = (dN_da2 - jet.q * dD_da2) / D;
  jet.dc1 = f.sgn_c1 * (dN_dc1 - jet.q * dD_dc1) / D;
  jet.dc2 = f.sgn_c2 * (dN_dc2 - jet.q * dD_dc2) / D;
  return jet;
}

FieldSample q2_field(const SolitonParams& p, const LineGrid& grid) {
  FieldSample out(grid);
  for (std::size_t j = 0; j < grid.n(); ++j) out.values[j] = q2(grid.x()[j], p);
  return out;
}

Q2Partials q2_partials(const SolitonParams& p, const LineGrid& grid) {
  Q2Partials out{FieldSample(grid), FieldSample(grid), FieldSample(grid),
                 FieldSample(grid), FieldSample(grid)};
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const Q2Jet jet = q2_jet(grid.x()[j], p);
    out.q.values[j] = jet.q;
    out.da1.values[j] = jet.da1;
    out.da2.values[j] = jet.da2;
    out.dc1.values[j] = jet.dc1;
    out.dc2.values[j] = jet.dc2;
  }
  return out;
}

double IdentityResiduals::max() const {
  return std::max({magic1, magic2, magic3});
}

IdentityResiduals identity_residuals(const SolitonParams& p, const LineGrid& grid,
                                     double edge_tol) {
  const Q2Partials P = q2_partials(p, grid);
  if (P.q.edge_abs() > edge_tol)
    throw GridTooSmall("identity_residuals: q does not decay at the grid edges");

  const FieldSample qx = derivative(P.q, 1);
  const FieldSample qxxx = derivative(P.q, 3);
  const auto& q = P.q.values;
  const double c1 = p.c[0], c2 = p.c[1];

  IdentityResiduals r;
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double m1 = 2.0 * qx.values[j] + 2.0 * (P.da1.values[j] + P.da2.values[j]);
    // d_x I3'(q) = -2 q_xxx - 12 q^2 q_x
    const double lhs2 = -2.0 * qxxx.values[j] - 12.0 * q[j] * q[j] * qx.values[j];
    const double m2 = lhs2 - 2.0 * (c1 * c1 * P.da1.values[j] + c2 * c2 * P.da2.values[j]);
    const double x = grid.x()[j];
    const double m3 = q[j] - (x - p.a[0]) * P.da1.values[j] - (x - p.a[1]) * P.da2.values[j] -
                      c1 * P.dc1.values[j] - c2 * P.dc2.values[j];
    r.magic1 = std::max(r.magic1, std::abs(m1));
    r.magic2 = std::max(r.magic2, std::abs(m2));
    r.magic3 = std::max(r.magic3, std::abs(m3));
  }
  return r;
}

}  // namespace mkdv
