#include "mkdv/functionals.hpp"

#include <cmath>

#include "mkdv/errors.hpp"
#include "mkdv/spectral.hpp"

namespace mkdv {

FieldSample antiderivative(const FieldSample& f, double mean_tol) {
  const std::size_t n = f.grid.n();
  const double dx = f.grid.dx();
  // Cumulative trapezoid with two Euler-Maclaurin endpoint corrections; the
  // correction derivatives are spectral, which is exact for the decaying
  // fields this is applied to.
  const FieldSample f1 = derivative(f, 1);
  const FieldSample f3 = derivative(f, 3);
  const double c2 = dx * dx / 12.0;
  const double c4 = dx * dx * dx * dx / 720.0;
  std::vector<double> cum(n, 0.0);
  for (std::size_t j = 1; j < n; ++j)
    cum[j] = cum[j - 1] + 0.5 * dx * (f.values[j - 1] + f.values[j]);
  auto corrected = [&](std::size_t j) {
    return cum[j] - c2 * (f1.values[j] - f1.values[0]) +
           c4 * (f3.values[j] - f3.values[0]);
  };
  const double total = corrected(n - 1);
  const double l2 = std::sqrt(inner(f, f));
  const double scale = l2 * std::sqrt(2.0 * f.grid.half_length());
  if (std::abs(total) > mean_tol * std::max(scale, 1e-300))
    throw NonZeroMean("antiderivative: field has non-vanishing integral");
  FieldSample out(f.grid);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = corrected(j) - 0.5 * total;
  return out;
}

double symplectic_form(const FieldSample& u, const FieldSample& v, double mean_tol) {
  return inner(u, antiderivative(v, mean_tol));
}

ConservedReport conserved(const FieldSample& u, double edge_tol) {
  if (!u.decay_flag(edge_tol))
    throw GridTooSmall("conserved: field does not decay at the grid edges");
  const FieldSample ux = derivative(u, 1);
  const FieldSample uxx = derivative(u, 2);
  ConservedReport r;
  const double dx = u.grid.dx();
  for (std::size_t j = 0; j < u.grid.n(); ++j) {
    const double v = u.values[j], vx = ux.values[j], vxx = uxx.values[j];
    const double v2 = v * v;
    r.i0 += v;
    r.i1 += v2;
    r.i3 += vx * vx - v2 * v2;
    r.i5 += vxx * vxx - 10.0 * vx * vx * v2 + 2.0 * v2 * v2 * v2;
    r.x_moment += u.grid.x()[j] * v2;
  }
  r.i0 *= dx;
  r.i1 *= dx;
  r.i3 *= dx;
  r.i5 *= dx;
  r.x_moment *= dx;
  return r;
}

ConservedReport conserved_closed_form(const SolitonParams& p) {
  const double c1 = std::abs(p.c[0]), c2 = std::abs(p.c[1]);
  const double s1 = p.eps[0] * (p.c[0] < 0 ? -1.0 : 1.0);
  const double s2 = p.eps[1] * (p.c[1] < 0 ? -1.0 : 1.0);
  ConservedReport r;
  r.i0 = M_PI * (s1 + s2);
  r.i1 = 2.0 * (c1 + c2);
  r.i3 = -2.0 / 3.0 * (c1 * c1 * c1 + c2 * c2 * c2);
  r.i5 = 0.4 * (std::pow(c1, 5) + std::pow(c2, 5));
  r.x_moment = 2.0 * (p.a[0] * c1 + p.a[1] * c2);
  return r;
}

ConservedReport compare_closed_form(ConservedReport measured, const SolitonParams& p) {
  const ConservedReport exact = conserved_closed_form(p);
  auto rel = [](double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
  };
  measured.closed_form_errors = {rel(measured.i0, exact.i0), rel(measured.i1, exact.i1),
                                 rel(measured.i3, exact.i3), rel(measured.i5, exact.i5),
                                 rel(measured.x_moment, exact.x_moment)};
  return measured;
}

FieldSample gradient(int j, const FieldSample& u) {
  FieldSample out(u.grid);
  if (j == 1) {
    for (std::size_t i = 0; i < u.grid.n(); ++i) out.values[i] = 2.0 * u.values[i];
    return out;
  }
  if (j == 3) {
    const FieldSample uxx = derivative(u, 2);
    for (std::size_t i = 0; i < u.grid.n(); ++i) {
      const double v = u.values[i];
      out.values[i] = -2.0 * uxx.values[i] - 4.0 * v * v * v;
    }
    return out;
  }
  if (j == 5) {
    const FieldSample ux = derivative(u, 1);
    const FieldSample uxx = derivative(u, 2);
    const FieldSample u4 = derivative(u, 4);
    for (std::size_t i = 0; i < u.grid.n(); ++i) {
      const double v = u.values[i], vx = ux.values[i], vxx = uxx.values[i];
      out.values[i] = 2.0 * u4.values[i] + 20.0 * v * v * vxx + 20.0 * v * vx * vx +
                      12.0 * std::pow(v, 5);
    }
    return out;
  }
  throw std::invalid_argument("gradient: j must be 1, 3, or 5");
}

FieldSample hessian_apply(int j, const FieldSample& q, const FieldSample& v) {
  if (!(q.grid == v.grid)) throw std::invalid_argument("hessian_apply: grid mismatch");
  FieldSample out(q.grid);
  const std::size_t n = q.grid.n();
  if (j == 1) {
    for (std::size_t i = 0; i < n; ++i) out.values[i] = 2.0 * v.values[i];
    return out;
  }
  if (j == 3) {
    const FieldSample vxx = derivative(v, 2);
    for (std::size_t i = 0; i < n; ++i)
      out.values[i] = -2.0 * vxx.values[i] - 12.0 * q.values[i] * q.values[i] * v.values[i];
    return out;
  }
  if (j == 5) {
    const FieldSample qx = derivative(q, 1);
    const FieldSample qxx = derivative(q, 2);
    const FieldSample vx = derivative(v, 1);
    const FieldSample v4 = derivative(v, 4);
    FieldSample q2vx(q.grid);
    for (std::size_t i = 0; i < n; ++i)
      q2vx.values[i] = q.values[i] * q.values[i] * vx.values[i];
    const FieldSample dq2vx = derivative(q2vx, 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double qq = q.values[i];
      const double pot = 20.0 * qx.values[i] * qx.values[i] +
                         40.0 * qq * qxx.values[i] + 60.0 * std::pow(qq, 4);
      out.values[i] = 2.0 * v4.values[i] + 20.0 * dq2vx.values[i] + pot * v.values[i];
    }
    return out;
  }
  throw std::invalid_argument("hessian_apply: j must be 1, 3, or 5");
}

double functional_value(int j, const FieldSample& u) {
  const ConservedReport r = conserved(u, 1e99 /* no decay gate here */);
  switch (j) {
    case 0: return r.i0;
    case 1: return r.i1;
    case 3: return r.i3;
    case 5: return r.i5;
  }
  throw std::invalid_argument("functional_value: j must be 0, 1, 3, or 5");
}

double hierarchy_residual(int k, const FieldSample& u) {
  if (k != 2) throw std::invalid_argument("hierarchy_residual: only k = 2 implemented");
  const FieldSample lhs = derivative(gradient(5, u), 1);
  const FieldSample f = derivative(gradient(3, u), 1);
  // Lambda(u) f = -f_xx - 4 u^2 f - 4 u_x d_x^{-1}(u f)
  const FieldSample fxx = derivative(f, 2);
  const FieldSample ux = derivative(u, 1);
  FieldSample uf(u.grid);
  for (std::size_t i = 0; i < u.grid.n(); ++i) uf.values[i] = u.values[i] * f.values[i];
  const FieldSample iuf = antiderivative(uf);
  double res = 0.0;
  for (std::size_t i = 0; i < u.grid.n(); ++i) {
    const double rhs = -fxx.values[i] - 4.0 * u.values[i] * u.values[i] * f.values[i] -
                       4.0 * ux.values[i] * iuf.values[i];
    res = std::max(res, std::abs(lhs.values[i] - rhs));
  }
  return res;
}

namespace {

struct Densities {
  FieldSample a1, a3, a5;
};

Densities densities(const FieldSample& u) {
  const FieldSample ux = derivative(u, 1);
  const FieldSample uxx = derivative(u, 2);
  Densities d{FieldSample(u.grid), FieldSample(u.grid), FieldSample(u.grid)};
  for (std::size_t i = 0; i < u.grid.n(); ++i) {
    const double v = u.values[i], vx = ux.values[i], vxx = uxx.values[i];
    d.a1.values[i] = v * v;
    d.a3.values[i] = vx * vx - std::pow(v, 4);
    d.a5.values[i] = vxx * vxx - 10.0 * vx * vx * v * v + 2.0 * std::pow(v, 6);
  }
  return d;
}

FieldSample bu_x(const FieldSample& u, const PotentialSpec& b, double t) {
  const FieldSample ux = derivative(u, 1);
  FieldSample out(u.grid);
  for (std::size_t i = 0; i < u.grid.n(); ++i) {
    const double x = u.grid.x()[i];
    out.values[i] = b.line(x, t, 1) * u.values[i] + b.line(x, t, 0) * ux.values[i];
  }
  return out;
}

}  // namespace

std::array<double, 3> near_conserved_residuals(const FieldSample& u,
                                               const PotentialSpec& b, double t) {
  const Densities d = densities(u);
  const FieldSample bux = bu_x(u, b, t);
  const FieldSample b1 = b.sample_line(u.grid, t, 1);
  const FieldSample b3 = b.sample_line(u.grid, t, 3);
  const FieldSample b5 = b.sample_line(u.grid, t, 5);

  const double l1 = inner(gradient(1, u), bux);
  const double r1 = inner(b1, d.a1);
  const double l3 = inner(gradient(3, u), bux);
  const double r3 = 3.0 * inner(b1, d.a3) - inner(b3, d.a1);
  const double l5 = inner(gradient(5, u), bux);
  const double r5 = 5.0 * inner(b1, d.a5) - 5.0 * inner(b3, d.a3) + inner(b5, d.a1);
  return {std::abs(l1 - r1), std::abs(l3 - r3), std::abs(l5 - r5)};
}

std::array<double, 3> near_conserved_linearized_residuals(const FieldSample& q,
                                                          const FieldSample& v,
                                                          const PotentialSpec& b,
                                                          double t) {
  const FieldSample bqx = bu_x(q, b, t);
  FieldSample bv(q.grid);
  for (std::size_t i = 0; i < q.grid.n(); ++i)
    bv.values[i] = b.line(q.grid.x()[i], t, 0) * v.values[i];

  const FieldSample qx = derivative(q, 1);
  const FieldSample qxx = derivative(q, 2);
  const FieldSample vx = derivative(v, 1);
  const FieldSample vxx = derivative(v, 2);
  FieldSample a1p(q.grid), a3p(q.grid), a5p(q.grid);
  for (std::size_t i = 0; i < q.grid.n(); ++i) {
    const double qq = q.values[i], qqx = qx.values[i], qqxx = qxx.values[i];
    const double vv = v.values[i], vvx = vx.values[i], vvxx = vxx.values[i];
    a1p.values[i] = 2.0 * qq * vv;
    a3p.values[i] = 2.0 * qqx * vvx - 4.0 * qq * qq * qq * vv;
    a5p.values[i] = 2.0 * qqxx * vvxx - 20.0 * qqx * qq * qq * vvx -
                    20.0 * qqx * qqx * qq * vv + 12.0 * std::pow(qq, 5) * vv;
  }
  const FieldSample b1 = b.sample_line(q.grid, t, 1);
  const FieldSample b3 = b.sample_line(q.grid, t, 3);
  const FieldSample b5 = b.sample_line(q.grid, t, 5);

  std::array<double, 3> out{};
  const int js[3] = {1, 3, 5};
  for (int idx = 0; idx < 3; ++idx) {
    const int j = js[idx];
    const double lhs =
        inner(hessian_apply(j, q, v), bqx) - inner(derivative(gradient(j, q), 1), bv);
    double rhs = 0.0;
    if (j == 1) rhs = inner(b1, a1p);
    if (j == 3) rhs = 3.0 * inner(b1, a3p) - inner(b3, a1p);
    if (j == 5) rhs = 5.0 * inner(b1, a5p) - 5.0 * inner(b3, a3p) + inner(b5, a1p);
    out[idx] = std::abs(lhs - rhs);
  }
  return out;
}

namespace {

struct Window {
  double lo = 0.0, hi = 0.0;
};

Window window_for(const SolitonParams& p, const InteractionOptions& opts) {
  const double cmin = std::min(std::abs(p.c[0]), std::abs(p.c[1]));
  const double m = opts.margin_per_unit_c / cmin;
  Window w;
  w.lo = std::min(p.a[0], p.a[1]) - m;
  w.hi = std::max(p.a[0], p.a[1]) + m;
  return w;
}

double quad_B(const SolitonParams& p, const PotentialSpec& b, double t, const Window& w,
              std::size_t n) {
  const double dx = (w.hi - w.lo) / static_cast<double>(n);
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = w.lo + (static_cast<double>(j) + 0.5) * dx;
    const double q = q2(x, p);
    s += b.line(x, t, 0) * q * q;
  }
  return 0.5 * s * dx;
}

}  // namespace

double interaction_B(const SolitonParams& p, const PotentialSpec& b, double t,
                     const InteractionOptions& opts) {
  p.validate();
  if (b.empty()) return 0.0;
  return quad_B(p, b, t, window_for(p, opts), opts.n_points);
}

std::array<double, 4> grad_B(const SolitonParams& p, const PotentialSpec& b, double t,
                             const InteractionOptions& opts) {
  p.validate();
  if (b.empty()) return {0.0, 0.0, 0.0, 0.0};
  const Window w = window_for(p, opts);  // frozen across displaced evaluations
  const double d = opts.fd_step;
  std::array<double, 4> g{};
  for (int i = 0; i < 4; ++i) {
    SolitonParams plus = p, minus = p;
    plus.sep_tol = minus.sep_tol = -1.0;  // displaced copies may brush the diagonal
    double* fp = (i < 2) ? &plus.a[i] : &plus.c[i - 2];
    double* fm = (i < 2) ? &minus.a[i] : &minus.c[i - 2];
    *fp += d;
    *fm -= d;
    g[i] = (quad_B(plus, b, t, w, opts.n_points) - quad_B(minus, b, t, w, opts.n_points)) /
           (2.0 * d);
  }
  return g;
}

}  // namespace mkdv
