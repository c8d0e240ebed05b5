#include <doctest.h>

#include <cmath>
#include <random>

#include "mkdv/errors.hpp"
#include "mkdv/soliton.hpp"
#include "mkdv/spectral.hpp"

using namespace mkdv;

namespace {

double rand_u(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

// Richardson-extrapolated central difference, the independent oracle for the
// analytic parameter derivatives.
template <class F>
double fd_deriv(F f, double x0, double h = 1e-4) {
  const double d1 = (f(x0 + h) - f(x0 - h)) / (2.0 * h);
  const double d2 = (f(x0 + h / 2) - f(x0 - h / 2)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

SolitonParams params(double a1, double a2, double c1, double c2) {
  SolitonParams p;
  p.a = {a1, a2};
  p.c = {c1, c2};
  return p;
}

}  // namespace

TEST_CASE("eta basics") {
  CHECK(eta(0, 0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eta(3.7, 3.7, 2.5) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(eta(-1.4, -1.4, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  // frozen high-precision value of 2 sech(2)
  CHECK(eta(1, 0, 2) == doctest::Approx(0.5316044576681594).epsilon(1e-14));
  // no overflow deep in the tail
  CHECK(std::isfinite(eta(300.0, 0.0, 3.0)));
  CHECK(eta(300.0, 0.0, 3.0) >= 0.0);
  // derivative against the oracle
  const double d = fd_deriv([](double x) { return eta(x, 0.3, 1.7); }, 0.9);
  CHECK(eta_dx(0.9, 0.3, 1.7) == doctest::Approx(d).epsilon(1e-9));
}

TEST_CASE("q2 reference values") {
  CHECK(q2(0.0, params(0, 0, 0.5, 1.5)) == doctest::Approx(1.0).epsilon(1e-14));
  // Q(x, 0, 1/2) = sech(x/2)
  for (double x : {-3.7, -1.0, 0.3, 2.2, 5.0})
    CHECK(q2(x, params(0, 0, 0.5, 1.5)) ==
          doctest::Approx(1.0 / std::cosh(0.5 * x)).epsilon(1e-13));
  // frozen mpmath jet at (x,a,c) = (0.37, (-1.2, 0.9), (0.8, 1.7))
  const Q2Jet j = q2_jet(0.37, params(-1.2, 0.9, 0.8, 1.7));
  CHECK(j.q == doctest::Approx(0.5844274115393118).epsilon(1e-13));
  CHECK(j.da1 == doctest::Approx(0.08094585300033768).epsilon(1e-12));
  CHECK(j.da2 == doctest::Approx(-0.5908495259776805).epsilon(1e-12));
  CHECK(j.dc1 == doctest::Approx(-0.8476688247391425).epsilon(1e-12));
  CHECK(j.dc2 == doctest::Approx(0.4837219019717206).epsilon(1e-12));
}

TEST_CASE("q2 symmetries") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const double x = rand_u(rng, -6, 6);
    const double a1 = rand_u(rng, -3, 3), a2 = rand_u(rng, -3, 3);
    const double c1 = rand_u(rng, 0.3, 1.2), c2 = c1 + rand_u(rng, 0.4, 1.6);
    const double q = q2(x, params(a1, a2, c1, c2));

    // antisymmetry under the index swap
    CHECK(q2(x, params(a2, a1, c2, c1)) == doctest::Approx(-q).epsilon(1e-10));
    // scaling q(tx, ta, c/t) = q(x,a,c)/t with t = 2
    CHECK(q2(2 * x, params(2 * a1, 2 * a2, c1 / 2, c2 / 2)) ==
          doctest::Approx(q / 2).epsilon(1e-10));
    // joint translation
    CHECK(q2(x + 0.7, params(a1 + 0.7, a2 + 0.7, c1, c2)) ==
          doctest::Approx(q).epsilon(1e-10));
  }
}

TEST_CASE("sign variant matches signed scales") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const double x = rand_u(rng, -5, 5);
    SolitonParams tilde = params(rand_u(rng, -2, 2), rand_u(rng, -2, 2), 0.9, 1.6);
    tilde.eps = {-1, 1};
    SolitonParams signed_c = tilde;
    signed_c.eps = {1, 1};
    signed_c.c[0] = -tilde.c[0];
    CHECK(q2(x, tilde) == doctest::Approx(q2(x, signed_c)).epsilon(1e-15));
  }
}

TEST_CASE("q2 stays finite for huge exponents") {
  // c_j |x - a_j| ~ 700 in all four sign combinations
  const SolitonParams p = params(-100, 100, 3.0, 3.5);
  for (double x : {-200.0, -100.0, 0.0, 100.0, 200.0}) {
    const Q2Jet j = q2_jet(x, p);
    CHECK(std::isfinite(j.q));
    CHECK(std::isfinite(j.da1));
    CHECK(std::isfinite(j.dc2));
  }
  CHECK(std::abs(q2(-200.0, p)) < 1e-100);  // far outside both solitons
}

TEST_CASE("degenerate parameters rejected") {
  CHECK_THROWS_AS(params(0, 0, 1.0, 1.0).validate(), DegenerateParams);
  CHECK_THROWS_AS(params(0, 0, 1.0, -1.0).validate(), DegenerateParams);
  CHECK_THROWS_AS(params(0, 0, 0.0, 1.0).validate(), DegenerateParams);
  CHECK_NOTHROW(params(0, 0, 0.5, 1.5).validate());
}

TEST_CASE("shifts") {
  const ShiftData s = shifts(params(0, 5, 1, 3));
  CHECK(s.alpha1 == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(s.alpha2 == doctest::Approx(-std::log(2.0) / 3.0).epsilon(1e-14));
  CHECK(s.alpha1 > 0);
  CHECK(s.alpha2 < 0);
  // a2 - a1 = 5 => theta = -1 => ahat_j = a_j - alpha_j
  CHECK(s.theta_value == doctest::Approx(-1.0));
  CHECK(s.ahat1 == doctest::Approx(0.0 - s.alpha1));
  CHECK(s.ahat2 == doctest::Approx(5.0 - s.alpha2));
  // mirror branch
  const ShiftData m = shifts(params(5, 0, 1, 3));
  CHECK(m.theta_value == doctest::Approx(1.0));
  CHECK(m.ahat1 == doctest::Approx(5.0 + m.alpha1));
  CHECK(m.ahat2 == doctest::Approx(0.0 + m.alpha2));

  CHECK_THROWS_AS(shifts(params(0, 0, 2, 1)), DegenerateParams);
}

TEST_CASE("theta smoothing") {
  CHECK(theta_smooth(-2.0) == 1.0);
  CHECK(theta_smooth(2.0) == -1.0);
  CHECK(theta_smooth(0.0) == doctest::Approx(0.0));
  // monotone
  double prev = theta_smooth(-1.0);
  for (double s = -0.9; s <= 1.0; s += 0.1) {
    const double v = theta_smooth(s);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("tau component") {
  // origin value of the corrected (sinh^2) form
  CHECK(tau_component(0, 0, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(tau_component(0.3, -0.2, 0.0) == 0.0);

  // Q decomposition reproduces q2 through the q2Q rescaling at 50 samples
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = rand_u(rng, -6, 6);
    const double alpha = rand_u(rng, -4, 4);
    const double delta = rand_u(rng, 0.05, 0.9);
    const double lhs = q2_sym(x, alpha, delta);
    const double rhs = q2(x, params(-alpha, alpha, 1 - delta, 1 + delta));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }

  // decay bound for alpha >= 0, x <= -10 (derivation constant 2 delta(1+delta))
  for (double delta : {0.1, 0.5, 0.9})
    for (double alpha : {0.0, 1.0, 5.0, 20.0})
      for (double x : {-10.0, -15.0, -30.0}) {
        const double bound = 2.0 * delta * (1 + delta) *
                             (1 + std::exp(-2 * (std::abs(alpha) + delta * std::abs(x)))) *
                             std::exp(-(1 + delta) * (std::abs(x) + std::abs(alpha)));
        CHECK(tau_component(x, alpha, delta) <= bound * (1 + 1e-12));
      }
}

TEST_CASE("analytic partials match the finite-difference oracle") {
  const SolitonParams p = params(-2, 2, 1, 2);
  const double x = 0.0;
  const Q2Jet j = q2_jet(x, p);
  auto at = [&](int idx, double v) {
    SolitonParams q = p;
    (idx < 2 ? q.a[idx] : q.c[idx - 2]) = v;
    return q2(x, q);
  };
  const double base[4] = {p.a[0], p.a[1], p.c[0], p.c[1]};
  const double got[4] = {j.da1, j.da2, j.dc1, j.dc2};
  for (int i = 0; i < 4; ++i) {
    const double fd = fd_deriv([&](double v) { return at(i, v); }, base[i]);
    CHECK(got[i] == doctest::Approx(fd).epsilon(1e-6));
  }

  // also at randomized parameters and points
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const SolitonParams q = params(rand_u(rng, -3, 3), rand_u(rng, -3, 3),
                                   rand_u(rng, 0.4, 1.1), rand_u(rng, 1.6, 2.6));
    const double xs = rand_u(rng, -5, 5);
    const Q2Jet jet = q2_jet(xs, q);
    const double fda1 = fd_deriv(
        [&](double v) {
          SolitonParams r = q;
          r.a[0] = v;
          return q2(xs, r);
        },
        q.a[0]);
    const double fdc2 = fd_deriv(
        [&](double v) {
          SolitonParams r = q;
          r.c[1] = v;
          return q2(xs, r);
        },
        q.c[1]);
    CHECK(jet.da1 == doctest::Approx(fda1).epsilon(1e-6));
    CHECK(jet.dc2 == doctest::Approx(fdc2).epsilon(1e-6));
  }
}

TEST_CASE("signed-scale derivatives carry the chain-rule sign") {
  SolitonParams p = params(-1, 1, -0.8, 1.7);
  const double x = 0.4;
  const Q2Jet j = q2_jet(x, p);
  const double fd = fd_deriv(
      [&](double v) {
        SolitonParams r = p;
        r.c[0] = v;
        return q2(x, r);
      },
      p.c[0]);
  CHECK(j.dc1 == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("partials asymptotics at large separation") {
  // d_{a_j} q = -d_x eta(., ahat_j, c_j) + exponentially small
  const SolitonParams p = params(-10, 10, 1, 2);
  const ShiftData s = shifts(p);
  const LineGrid g(2048, 40.0);
  const Q2Partials parts = q2_partials(p, g);
  double sup1 = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    const double e1 = eta_dx(g.x()[i], s.ahat1, p.c[0]);
    sup1 = std::max(sup1, std::abs(parts.da1.values[i] + e1));
  }
  CHECK(sup1 <= 1e-6);

  // E:qc composite form for c-derivatives
  const double theta = s.theta_value;
  const double denom = (p.c[0] + p.c[1]) * (p.c[0] - p.c[1]);
  double sup2 = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    const double x = g.x()[i];
    // d_x [ (x - a_1) eta(x, ahat_1, c_1) ]
    const double t1 = eta(x, s.ahat1, p.c[0]) + (x - p.a[0]) * eta_dx(x, s.ahat1, p.c[0]);
    const double t2 = 2.0 * p.c[1] * theta / denom * eta_dx(x, s.ahat1, p.c[0]);
    const double t3 = -2.0 * p.c[0] * theta / denom * eta_dx(x, s.ahat2, p.c[1]);
    sup2 = std::max(sup2, std::abs(p.c[0] * parts.dc1.values[i] - (t1 + t2 + t3)));
  }
  CHECK(sup2 <= 1e-5);
}

TEST_CASE("q approaches shifted single solitons as separation grows") {
  std::vector<double> seps = {10.0, 15.0, 20.0};
  std::vector<double> residuals;
  for (double sep : seps) {
    const SolitonParams p = params(-sep / 2, sep / 2, 1, 2);
    const ShiftData s = shifts(p);
    const LineGrid g(2048, sep / 2 + 25.0);
    double sup = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
      const double x = g.x()[i];
      const double approx = eta(x, s.ahat1, p.c[0]) + eta(x, s.ahat2, p.c[1]);
      sup = std::max(sup, std::abs(q2(x, p) - approx));
    }
    residuals.push_back(sup);
  }
  // geometric decay: each step of 5 in separation shrinks the residual
  CHECK(residuals[1] < 0.5 * residuals[0]);
  CHECK(residuals[2] < 0.5 * residuals[1]);
  // roughly linear log-residual: the two decrements agree within a factor 3
  const double d1 = std::log(residuals[0] / residuals[1]);
  const double d2 = std::log(residuals[1] / residuals[2]);
  CHECK(d1 / d2 > 1.0 / 3.0);
  CHECK(d1 / d2 < 3.0);
}

TEST_CASE("single-soliton analogue of the scaling identity") {
  // (x-a) d_a eta + c d_c eta - eta == 0
  for (double x : {-1.0, 0.2, 1.7}) {
    const double a = 0.4, c = 1.3;
    const double da = fd_deriv([&](double v) { return eta(x, v, c); }, a, 1e-5);
    const double dc = fd_deriv([&](double v) { return eta(x, a, v); }, c, 1e-5);
    CHECK((x - a) * da + c * dc - eta(x, a, c) == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("fundamental identity residuals") {
  const LineGrid g(4096, 100.0);
  const IdentityResiduals r = identity_residuals(params(-3, 3, 1, 2), g);
  CHECK(r.magic1 <= 1e-8);
  CHECK(r.magic2 <= 1e-8);
  CHECK(r.magic3 <= 1e-8);

  // translation invariance of the residuals
  const IdentityResiduals rt = identity_residuals(params(-3 + 0.5, 3 + 0.5, 1, 2), g);
  CHECK(rt.max() <= 1e-8);

  // 10-case random parameter sweep
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const SolitonParams p = params(rand_u(rng, -2, 2), rand_u(rng, -2, 2),
                                   rand_u(rng, 0.6, 1.1), rand_u(rng, 1.5, 2.2));
    CHECK(identity_residuals(p, g).max() <= 1e-8);
  }

  CHECK_THROWS_AS(identity_residuals(params(-3, 3, 1, 2), LineGrid(256, 6.0)),
                  GridTooSmall);
}
