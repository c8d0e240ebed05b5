#include "mkdv/modulation.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "mkdv/errors.hpp"
#include "mkdv/spectral.hpp"

namespace mkdv {

namespace {

struct PairingData {
  Q2Partials parts;
  std::array<FieldSample, 4> w;  // d_x^{-1} of each parameter derivative
};

PairingData pairing_data(const SolitonParams& p, const LineGrid& grid, double mean_tol) {
  PairingData d{q2_partials(p, grid),
                {FieldSample(grid), FieldSample(grid), FieldSample(grid), FieldSample(grid)}};
  d.w[0] = antiderivative(d.parts.da1, mean_tol);
  d.w[1] = antiderivative(d.parts.da2, mean_tol);
  d.w[2] = antiderivative(d.parts.dc1, mean_tol);
  d.w[3] = antiderivative(d.parts.dc2, mean_tol);
  return d;
}

const FieldSample& part(const Q2Partials& p, int i) {
  switch (i) {
    case 0: return p.da1;
    case 1: return p.da2;
    case 2: return p.dc1;
    default: return p.dc2;
  }
}

}  // namespace

ModulationFit fit(const FieldSample& u, const SolitonParams& guess, const FitOptions& opts) {
  SolitonParams p = guess;
  p.validate();
  const double radius = opts.capture_radius_factor *
                        std::min(std::abs(p.c[0]), std::abs(p.c[1]));
  const double u_norm = std::sqrt(inner(u, u));

  int iters = 0;
  std::array<double, 4> phi{};
  PairingData d = pairing_data(p, u.grid, opts.mean_tol);
  for (;;) {
    FieldSample v(u.grid);
    for (std::size_t j = 0; j < u.grid.n(); ++j)
      v.values[j] = u.values[j] - d.parts.q.values[j];

    bool done = true;
    for (int i = 0; i < 4; ++i) {
      phi[i] = inner(v, d.w[i]);
      const double scale = std::max(u_norm * std::sqrt(inner(d.w[i], d.w[i])), 1e-30);
      if (std::abs(phi[i]) > opts.tol_factor * scale) done = false;
    }
    if (done) {
      ModulationFit out{p, std::move(v), phi, 0.0, iters};
      out.h2_error = h2_norm(out.residual);
      return out;
    }
    if (iters >= opts.max_iters)
      throw NoConvergence("modulation fit: no convergence after max_iters");

    Eigen::Matrix4d J;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) J(i, j) = -inner(part(d.parts, j), d.w[i]);
    Eigen::Vector4d rhs(-phi[0], -phi[1], -phi[2], -phi[3]);
    const Eigen::Vector4d delta = J.fullPivLu().solve(rhs);
    if (!delta.allFinite())
      throw NoConvergence("modulation fit: singular pairing Jacobian");
    if (delta.cwiseAbs().maxCoeff() > 10.0 * radius)
      throw NoConvergence("modulation fit: step left the capture radius");

    p.a[0] += delta(0);
    p.a[1] += delta(1);
    p.c[0] += delta(2);
    p.c[1] += delta(3);
    p.validate();  // DegenerateParams if the iterates approach C
    ++iters;

    const double corr = std::max(
        std::max(std::abs(p.a[0] - guess.a[0]), std::abs(p.a[1] - guess.a[1])),
        std::max(std::abs(p.c[0] - guess.c[0]), std::abs(p.c[1] - guess.c[1])));
    if (corr > opts.max_correction)
      throw NoConvergence("modulation fit: correction exceeds the capture radius");

    d = pairing_data(p, u.grid, opts.mean_tol);
  }
}

TrackResult track(const std::vector<FieldState>& snapshots, const SolitonParams& init,
                  const FitOptions& opts) {
  TrackResult res;
  SolitonParams guess = init;
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    FitOptions o = opts;
    o.max_correction = opts.capture_radius_factor *
                       std::min(std::abs(guess.c[0]), std::abs(guess.c[1]));
    try {
      const ModulationFit f = fit(snapshots[i].u, guess, o);
      res.records.push_back(
          {snapshots[i].t, f.params, f.h2_error, f.newton_iters, f.ortho_residuals});
      guess = f.params;
    } catch (const Error& e) {
      throw TrackingLost(std::string("tracking lost: ") + e.what(), i);
    }
  }
  return res;
}

FDecomposition f_decomposition(const SolitonParams& p,
                               const std::array<double, 2>& a_dot,
                               const std::array<double, 2>& c_dot,
                               const PotentialSpec& b, double t, const LineGrid& grid,
                               const InteractionOptions& opts) {
  const Q2Partials parts = q2_partials(p, grid);
  const std::array<double, 4> g =
      b.empty() ? std::array<double, 4>{0, 0, 0, 0} : grad_B(p, b, t, opts);

  FDecomposition out{{a_dot[0] - p.c[0] * p.c[0] + g[2], a_dot[1] - p.c[1] * p.c[1] + g[3],
                      c_dot[0] - g[0], c_dot[1] - g[1]},
                     FieldSample(grid),
                     0.0};

  // F_perp = -d_x(bq) - (dB/dc_j) d_{a_j}q + (dB/da_j) d_{c_j}q
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double x = grid.x()[j];
    const double q = parts.q.values[j];
    const double qx = -(parts.da1.values[j] + parts.da2.values[j]);
    const double dbq = b.line(x, t, 1) * q + b.line(x, t, 0) * qx;
    const double v = -dbq - g[2] * parts.da1.values[j] - g[3] * parts.da2.values[j] +
                     g[0] * parts.dc1.values[j] + g[1] * parts.dc2.values[j];
    out.f_perp.values[j] = v;
    out.sup_f_perp = std::max(out.sup_f_perp, std::abs(v));
  }
  return out;
}

}  // namespace mkdv
