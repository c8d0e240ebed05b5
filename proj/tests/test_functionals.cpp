#include <doctest.h>

#include <cmath>
#include <random>

#include "mkdv/errors.hpp"
#include "mkdv/functionals.hpp"
#include "mkdv/spectral.hpp"

using namespace mkdv;

namespace {

double rand_u(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

SolitonParams params(double a1, double a2, double c1, double c2) {
  SolitonParams p;
  p.a = {a1, a2};
  p.c = {c1, c2};
  return p;
}

FieldSample eta_field(const LineGrid& g, double a, double c) {
  FieldSample f(g);
  for (std::size_t i = 0; i < g.n(); ++i) f.values[i] = eta(g.x()[i], a, c);
  return f;
}

// smooth decaying test field: small sum of sech bumps
FieldSample random_bumps(const LineGrid& g, std::mt19937_64& rng) {
  FieldSample f(g);
  for (int b = 0; b < 3; ++b) {
    const double amp = rand_u(rng, -1, 1);
    const double scale = rand_u(rng, 0.7, 1.8);
    const double center = rand_u(rng, -4, 4);
    for (std::size_t i = 0; i < g.n(); ++i)
      f.values[i] += amp * eta(g.x()[i], center, scale);
  }
  return f;
}

PotentialSpec constant_potential(double beta) {
  PotentialSpec b;
  b.terms = {{beta, 0.0, 0.0, 0.0, PotentialTerm::Kind::Cos}};
  return b;
}

}  // namespace

TEST_CASE("antiderivative") {
  const LineGrid g(2048, 30.0);
  // f = d_x eta -> eta (even, decaying, zero at the ends)
  FieldSample f(g);
  for (std::size_t i = 0; i < g.n(); ++i) f.values[i] = eta_dx(g.x()[i], 0, 1);
  const FieldSample F = antiderivative(f);
  for (std::size_t i = 0; i < g.n(); i += 97)
    CHECK(F.values[i] == doctest::Approx(eta(g.x()[i], 0, 1)).epsilon(1e-8));

  // d_{c_1} q has zero integral, so the antiderivative decays
  const Q2Partials parts = q2_partials(params(-2, 2, 1, 2), g);
  const FieldSample Ac = antiderivative(parts.dc1);
  CHECK(Ac.edge_abs() < 1e-7);

  // nonzero mean rejected
  FieldSample gauss(g);
  for (std::size_t i = 0; i < g.n(); ++i)
    gauss.values[i] = std::exp(-g.x()[i] * g.x()[i]);
  CHECK_THROWS_AS(antiderivative(gauss), NonZeroMean);
}

TEST_CASE("symplectic form") {
  const LineGrid g(2048, 30.0);
  std::mt19937_64 rng(17);
  // omega(u,u) = 0 for mean-zero u
  FieldSample u(g);
  for (std::size_t i = 0; i < g.n(); ++i) u.values[i] = eta_dx(g.x()[i], 0.5, 1.2);
  CHECK(std::abs(symplectic_form(u, u)) < 1e-12);

  // canonical pairing pattern on tangent fields, 10 random admissible (a,c)
  for (int trial = 0; trial < 10; ++trial) {
    const SolitonParams p = params(rand_u(rng, -2, 2), rand_u(rng, -2, 2),
                                   rand_u(rng, 0.6, 1.1), rand_u(rng, 1.5, 2.2));
    const Q2Partials parts = q2_partials(p, g);
    const FieldSample* f[4] = {&parts.da1, &parts.da2, &parts.dc1, &parts.dc2};
    const double want[4][4] = {{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double got = inner(*f[i], antiderivative(*f[j], 1e-6));
        CHECK(got == doctest::Approx(want[i][j]).epsilon(1e-6).scale(1.0));
      }
  }
}

TEST_CASE("conserved closed forms") {
  const LineGrid g(4096, 40.0);
  const SolitonParams p = params(-2, 2, 1, 2);
  const ConservedReport r = compare_closed_form(conserved(q2_field(p, g)), p);
  CHECK(r.i1 == doctest::Approx(6.0).epsilon(1e-10));
  CHECK(r.i3 == doctest::Approx(-6.0).epsilon(1e-10));
  CHECK(r.i5 == doctest::Approx(13.2).epsilon(1e-10));
  CHECK(r.i0 == doctest::Approx(2.0 * M_PI).epsilon(1e-10));
  for (double e : r.closed_form_errors) CHECK(e <= 1e-8);

  const SolitonParams pm = params(1, -1, 1, 2);
  CHECK(conserved(q2_field(pm, g)).x_moment == doctest::Approx(-2.0).epsilon(1e-9));

  const ConservedReport zero = conserved(FieldSample(g));
  CHECK(zero.i0 == 0.0);
  CHECK(zero.i1 == 0.0);
  CHECK(zero.i5 == 0.0);

  CHECK_THROWS_AS(conserved(q2_field(params(-2, 2, 1, 2), LineGrid(256, 5.0))),
                  GridTooSmall);
}

TEST_CASE("gradients") {
  const LineGrid g(2048, 30.0);
  std::mt19937_64 rng(23);
  const FieldSample u = random_bumps(g, rng);

  // I1'(u) = 2u
  const FieldSample g1 = gradient(1, u);
  for (std::size_t i = 0; i < g.n(); i += 71)
    CHECK(g1.values[i] == doctest::Approx(2.0 * u.values[i]));

  // I_j'(eta) = 2(-1)^{(j-1)/2} eta
  const FieldSample e = eta_field(g, 0.0, 1.0);
  const double sign[3] = {1.0, -1.0, 1.0};
  const int js[3] = {1, 3, 5};
  for (int idx = 0; idx < 3; ++idx) {
    const FieldSample gj = gradient(js[idx], e);
    double sup = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i)
      sup = std::max(sup, std::abs(gj.values[i] - 2.0 * sign[idx] * e.values[i]));
    CHECK(sup <= 1e-6);
  }

  // directional finite differences of I_j
  const FieldSample v = random_bumps(g, rng);
  const double s = 1e-4;
  for (int j : {1, 3, 5}) {
    FieldSample up(g), um(g);
    for (std::size_t i = 0; i < g.n(); ++i) {
      up.values[i] = u.values[i] + s * v.values[i];
      um.values[i] = u.values[i] - s * v.values[i];
    }
    const double fd = (functional_value(j, up) - functional_value(j, um)) / (2.0 * s);
    const double an = inner(gradient(j, u), v);
    CHECK(an == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("hessians") {
  const LineGrid g(2048, 30.0);
  std::mt19937_64 rng(29);
  const FieldSample q = q2_field(params(-1, 1, 1, 2), g);
  const FieldSample v = random_bumps(g, rng);
  const double s = 1e-4;
  for (int j : {1, 3, 5}) {
    FieldSample up(g), um(g);
    for (std::size_t i = 0; i < g.n(); ++i) {
      up.values[i] = q.values[i] + s * v.values[i];
      um.values[i] = q.values[i] - s * v.values[i];
    }
    const double second_diff =
        (functional_value(j, up) - 2.0 * functional_value(j, q) + functional_value(j, um)) /
        (s * s);
    const double an = inner(hessian_apply(j, q, v), v);
    CHECK(an == doctest::Approx(second_diff).epsilon(1e-5));
  }
}

TEST_CASE("conserved pairings vanish") {
  // <I_j'(u), d_x I_k'(u)> = 0 for j,k in {1,3}
  const LineGrid g(2048, 30.0);
  std::mt19937_64 rng(31);
  const FieldSample u = random_bumps(g, rng);
  for (int j : {1, 3})
    for (int k : {1, 3}) {
      const double v = inner(gradient(j, u), derivative(gradient(k, u), 1));
      CHECK(std::abs(v) <= 1e-6);
    }
}

TEST_CASE("hierarchy recursion") {
  const LineGrid g(4096, 100.0);
  // u = eta: both sides equal d_x(2 eta) = 2 d_x eta since I5'(eta) = 2 eta
  const FieldSample e = eta_field(g, 0.0, 1.0);
  CHECK(hierarchy_residual(2, e) <= 1e-7);
  const FieldSample lhs = derivative(gradient(5, e), 1);
  double sup = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i)
    sup = std::max(sup, std::abs(lhs.values[i] - 2.0 * eta_dx(g.x()[i], 0, 1)));
  CHECK(sup <= 1e-7);

  // u = q2 with c = (1,2)
  const FieldSample q = q2_field(params(-3, 3, 1, 2), g);
  CHECK(hierarchy_residual(2, q) <= 1e-6);

  // smoke: residual stays finite under scaling
  FieldSample half(g);
  for (std::size_t i = 0; i < g.n(); ++i) half.values[i] = 0.5 * q.values[i];
  CHECK(std::isfinite(hierarchy_residual(2, half)));
}

TEST_CASE("near-conserved identities") {
  const LineGrid g(4096, 100.0);
  const FieldSample q = q2_field(params(-3, 3, 1, 2), g);

  // constant b: all residuals vanish
  const auto rc = near_conserved_residuals(q, constant_potential(0.8), 0.0);
  for (double r : rc) CHECK(r <= 1e-8);

  // b = cos^2 (unit scale)
  PotentialSpec cos2 = potential_preset("cos2");
  const auto r = near_conserved_residuals(q, cos2, 0.0);
  for (double v : r) CHECK(v <= 1e-6);

  // pointwise j = 1: u d_x I1'(u) - d_x A1(u) == 0 exactly
  std::mt19937_64 rng(37);
  const FieldSample u = random_bumps(g, rng);
  const FieldSample ux = derivative(u, 1);
  FieldSample u2(g);
  for (std::size_t i = 0; i < g.n(); ++i) u2.values[i] = u.values[i] * u.values[i];
  const FieldSample d_a1 = derivative(u2, 1);
  double sup = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i)
    sup = std::max(sup, std::abs(u.values[i] * 2.0 * ux.values[i] - d_a1.values[i]));
  CHECK(sup <= 1e-9);

  // linearized variant
  const FieldSample v = random_bumps(g, rng);
  const auto rl = near_conserved_linearized_residuals(q, v, cos2, 0.0);
  for (double w : rl) CHECK(w <= 1e-6);
  const auto rlc = near_conserved_linearized_residuals(q, v, constant_potential(1.3), 0.0);
  for (double w : rlc) CHECK(w <= 1e-8);
}

TEST_CASE("interaction potential") {
  const SolitonParams p = params(-2, 2, 1, 2);
  CHECK(interaction_B(p, PotentialSpec{}, 0.0) == 0.0);
  const auto g0 = grad_B(p, PotentialSpec{}, 0.0);
  for (double v : g0) CHECK(v == 0.0);

  // constant b = beta: B = beta (c1 + c2), dB/da = 0, dB/dc_j = beta.
  // With the default 6/c window the truncated tails are ~1e-5; a wider
  // window shows the quadrature itself is at rounding level.
  const double beta = 0.7;
  const PotentialSpec bc = constant_potential(beta);
  CHECK(interaction_B(p, bc, 0.0) == doctest::Approx(beta * 3.0).epsilon(1e-4));
  InteractionOptions wide;
  wide.margin_per_unit_c = 14.0;
  wide.n_points = 4096;
  CHECK(interaction_B(p, bc, 0.0, wide) == doctest::Approx(beta * 3.0).epsilon(1e-9));
  const auto gb = grad_B(p, bc, 0.0, wide);
  CHECK(std::abs(gb[0]) <= 1e-7);
  CHECK(std::abs(gb[1]) <= 1e-7);
  CHECK(gb[2] == doctest::Approx(beta).epsilon(1e-6));
  CHECK(gb[3] == doctest::Approx(beta).epsilon(1e-6));

  // asymptotic forms at large separation: dB/da_j -> c_j b'(ahat_j) and the
  // E:Bc-style expansion for dB/dc_j (theta-term coefficient 2 in the
  // half-integral convention; checked against the quadrature).
  PotentialSpec slow = potential_preset("cos2");
  slow.h = 0.1;
  const SolitonParams far = params(-10, 10, 1, 2);
  const ShiftData s = shifts(far);
  const auto gf = grad_B(far, slow, 0.0, wide);
  CHECK(gf[0] == doctest::Approx(far.c[0] * slow.line(s.ahat1, 0.0, 1)).epsilon(5e-3));
  CHECK(gf[1] == doctest::Approx(far.c[1] * slow.line(s.ahat2, 0.0, 1)).epsilon(5e-3));
  const double ahat[2] = {s.ahat1, s.ahat2};
  const double aa[2] = {far.a[0], far.a[1]};
  const double cc[2] = {far.c[0], far.c[1]};
  const double dbp = slow.line(s.ahat2, 0.0, 1) - slow.line(s.ahat1, 0.0, 1);
  for (int j = 0; j < 2; ++j) {
    const double expect =
        slow.line(ahat[j], 0.0, 0) + slow.line(ahat[j], 0.0, 1) * (aa[j] - ahat[j]) -
        M_PI * M_PI / 24.0 * slow.line(ahat[j], 0.0, 2) / (cc[j] * cc[j]) -
        2.0 * (j == 0 ? -1.0 : 1.0) * cc[1 - j] * dbp * s.theta_value /
            ((cc[0] + cc[1]) * (cc[0] - cc[1]));
    CHECK(gf[2 + j] == doctest::Approx(expect).epsilon(5e-3).scale(1.0));
  }

  // central-difference Hessian of B is symmetric
  const double step = 1e-4;
  double hess[4][4];
  for (int i = 0; i < 4; ++i) {
    SolitonParams plus = p, minus = p;
    (i < 2 ? plus.a[i] : plus.c[i - 2]) += step;
    (i < 2 ? minus.a[i] : minus.c[i - 2]) -= step;
    const auto gp = grad_B(plus, slow, 0.0, wide);
    const auto gm = grad_B(minus, slow, 0.0, wide);
    for (int j = 0; j < 4; ++j) hess[i][j] = (gp[j] - gm[j]) / (2.0 * step);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK(hess[i][j] == doctest::Approx(hess[j][i]).epsilon(1e-4).scale(1.0));
}

TEST_CASE("sobolev norms") {
  const LineGrid g(1024, 20.0);
  FieldSample c(g);
  for (auto& v : c.values) v = -1.7;
  CHECK(sobolev_norm(c, 0) == doctest::Approx(1.7 * std::sqrt(40.0)).epsilon(1e-12));

  const FieldSample e = eta_field(g, 0.0, 1.0);
  CHECK(sobolev_norm(e, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  // frozen closed form: ||sech||_H2^2 = int(u^2 + 2 u_x^2 + u_xx^2) = 64/15
  CHECK(sobolev_norm(e, 2) == doctest::Approx(std::sqrt(64.0 / 15.0)).epsilon(1e-8));
}
