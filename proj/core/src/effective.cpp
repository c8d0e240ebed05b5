#include "mkdv/effective.hpp"

#include <cmath>
#include <limits>

#include "mkdv/errors.hpp"
#include "mkdv/soliton.hpp"

namespace mkdv {

bool in_validity_window(const std::array<double, 2>& c, double delta1) {
  const double c1 = c[0], c2 = c[1];
  if (!(std::abs(c1 - c2) > delta1 && std::abs(c1 + c2) > delta1)) return false;
  for (double v : c)
    if (!(std::abs(v) > delta1 && std::abs(v) < 1.0 / delta1)) return false;
  return true;
}

std::array<double, 4> rhs_coupled(const EffectiveState& s, const PotentialSpec& b,
                                  const InteractionOptions& opts) {
  SolitonParams p;
  p.a = s.a;
  p.c = s.c;
  p.sep_tol = -1.0;  // avoided crossings may brush the diagonal
  const std::array<double, 4> g =
      b.empty() ? std::array<double, 4>{0, 0, 0, 0} : grad_B(p, b, s.t, opts);
  auto sgn = [](double v) { return v < 0 ? -1.0 : 1.0; };
  return {s.c[0] * s.c[0] - sgn(s.c[0]) * g[2], s.c[1] * s.c[1] - sgn(s.c[1]) * g[3],
          sgn(s.c[0]) * g[0], sgn(s.c[1]) * g[1]};
}

std::array<double, 4> rhs_decoupled(const std::array<double, 2>& A,
                                    const std::array<double, 2>& C, double T,
                                    const PotentialSpec& b0) {
  std::array<double, 4> out{};
  for (int j = 0; j < 2; ++j) {
    out[j] = C[j] * C[j] - b0.b0(A[j], T, 0);
    out[2 + j] = C[j] * b0.b0(A[j], T, 1);
  }
  return out;
}

namespace {

using Vec4 = std::array<double, 4>;

Vec4 axpy(const Vec4& y, double a, const Vec4& x) {
  return {y[0] + a * x[0], y[1] + a * x[1], y[2] + a * x[2], y[3] + a * x[3]};
}

template <class Rhs>
EffectiveTrajectory run_rk4(const EffectiveState& init, double t_end,
                            const EffectiveOptions& opts, Rhs rhs) {
  EffectiveTrajectory traj;
  EffectiveState s = init;
  s.valid = in_validity_window(s.c, opts.delta1);
  traj.states.push_back(s);

  const double dt = opts.dt;
  const std::size_t total =
      static_cast<std::size_t>(std::llround(std::max(0.0, (t_end - init.t) / dt)));
  bool hit = !s.valid;
  if (hit) traj.t0 = s.t;

  for (std::size_t n = 0; n < total; ++n) {
    Vec4 y{s.a[0], s.a[1], s.c[0], s.c[1]};
    const Vec4 k1 = rhs(y, s.t);
    const Vec4 k2 = rhs(axpy(y, 0.5 * dt, k1), s.t + 0.5 * dt);
    const Vec4 k3 = rhs(axpy(y, 0.5 * dt, k2), s.t + 0.5 * dt);
    const Vec4 k4 = rhs(axpy(y, dt, k3), s.t + dt);
    for (int i = 0; i < 4; ++i)
      y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    for (double v : y)
      if (!std::isfinite(v)) {
        traj.termination = Termination::StepFailure;
        return traj;
      }
    s.a = {y[0], y[1]};
    s.c = {y[2], y[3]};
    s.t += dt;
    s.valid = in_validity_window(s.c, opts.delta1);
    if (!s.valid && !hit) {
      hit = true;
      traj.t0 = s.t;
      if (opts.halt_on_violation) {
        traj.states.push_back(s);
        traj.termination = Termination::HitValidityBoundary;
        return traj;
      }
    }
    if ((n + 1) % std::max<std::size_t>(1, opts.store_stride) == 0 || n + 1 == total)
      traj.states.push_back(s);
  }
  traj.termination = Termination::ReachedEnd;
  return traj;
}

}  // namespace

EffectiveTrajectory integrate_effective(EffectiveKind kind, const EffectiveState& init,
                                        const PotentialSpec& b, double t_end,
                                        const EffectiveOptions& opts) {
  if (kind == EffectiveKind::Coupled) {
    return run_rk4(init, t_end, opts, [&](const Vec4& y, double t) {
      EffectiveState s;
      s.a = {y[0], y[1]};
      s.c = {y[2], y[3]};
      s.t = t;
      return rhs_coupled(s, b, opts.interaction);
    });
  }
  return run_rk4(init, t_end, opts, [&](const Vec4& y, double T) {
    return rhs_decoupled({y[0], y[1]}, {y[2], y[3]}, T, b);
  });
}

double decoupled_energy(double A, double C, const PotentialSpec& b0) {
  return -C * C * C / 3.0 + C * b0.b0(A, 0.0, 0);
}

double effective_hamiltonian(const EffectiveState& s, const PotentialSpec& b,
                             const InteractionOptions& opts) {
  SolitonParams p;
  p.a = s.a;
  p.c = s.c;
  const double kin =
      -(std::pow(std::abs(s.c[0]), 3) + std::pow(std::abs(s.c[1]), 3)) / 3.0;
  return kin + (b.empty() ? 0.0 : interaction_B(p, b, s.t, opts));
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("linear_fit: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double d = n * sxx - sx * sx;
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / d;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0.0;
  const double mean = sy / n;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double fit = f.slope * x[i] + f.intercept;
    ss_res += (y[i] - fit) * (y[i] - fit);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

CrossingReport crossing_analysis(const PotentialSpec& b0,
                                 const std::array<double, 2>& A0,
                                 const std::array<double, 2>& C0,
                                 const std::vector<double>& h_list, double T_end,
                                 const EffectiveOptions& opts) {
  // Decoupled reference must exhibit a C-crossing.
  EffectiveState dinit;
  dinit.a = A0;
  dinit.c = C0;
  EffectiveOptions dopts = opts;
  dopts.halt_on_violation = false;
  dopts.store_stride = 1;
  const EffectiveTrajectory dec =
      integrate_effective(EffectiveKind::Decoupled, dinit, b0, T_end, dopts);
  double cross_T = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 1; i < dec.states.size(); ++i) {
    const double g0 = dec.states[i - 1].c[1] - dec.states[i - 1].c[0];
    const double g1 = dec.states[i].c[1] - dec.states[i].c[0];
    if (g0 == 0.0 || g0 * g1 < 0.0) {
      cross_T = dec.states[i].t;
      break;
    }
  }
  if (!std::isfinite(cross_T))
    throw NoCrossing("decoupled reference trajectory never crosses");

  CrossingReport rep;
  rep.decoupled_cross_T = cross_T;
  for (double h : h_list) {
    EffectiveState init;
    init.a = {A0[0] / h, A0[1] / h};
    init.c = C0;
    PotentialSpec b = b0;
    b.h = h;
    EffectiveOptions copts = opts;
    copts.halt_on_violation = false;  // pass through the avoided crossing
    copts.store_stride = 1;
    const EffectiveTrajectory traj =
        integrate_effective(EffectiveKind::Coupled, init, b, T_end / h, copts);
    if (traj.termination == Termination::StepFailure)
      throw StepFailure("crossing_analysis: coupled integration failed");
    CrossingCase cs;
    cs.h = h;
    cs.min_gap = std::numeric_limits<double>::infinity();
    for (const auto& s : traj.states) {
      const double gap = std::abs(s.c[1] - s.c[0]);
      if (gap < cs.min_gap) {
        cs.min_gap = gap;
        cs.a_gap = std::abs(s.a[0] - s.a[1]);
        cs.t_at_min = s.t * h;
      }
    }
    rep.cases.push_back(cs);
  }

  std::vector<double> inv_h, log_gap;
  for (const auto& cs : rep.cases) {
    inv_h.push_back(1.0 / cs.h);
    log_gap.push_back(std::log(cs.min_gap));
  }
  rep.log_gap_vs_inv_h = linear_fit(inv_h, log_gap);
  return rep;
}

DecayRateResult decay_rate_experiment(const PotentialSpec& b0, double a0, double T_end,
                                      double search_range,
                                      const EffectiveOptions& opts) {
  if (!(b0.b0(a0, 0.0, 0) > 0))
    throw NoZeroAhead("decay_rate_experiment: b0(a0) must be positive");

  // Locate the first zero of b0 ahead of a0: either a sign change or a
  // touching zero (local minimum with vanishing value), refined by bisection.
  const double step = 1e-3;
  const double ref = std::abs(b0.b0(a0, 0.0, 0));
  double a1 = std::numeric_limits<double>::quiet_NaN();
  double pv = b0.b0(a0, 0.0, 0);
  double pd = b0.b0(a0, 0.0, 1);
  for (double a = a0 + step; a <= a0 + search_range; a += step) {
    const double v = b0.b0(a, 0.0, 0);
    const double d = b0.b0(a, 0.0, 1);
    double cand = std::numeric_limits<double>::quiet_NaN();
    if (pv > 0.0 && v <= 0.0) {
      double lo = a - step, hi = a;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (b0.b0(mid, 0.0, 0) > 0.0 ? lo : hi) = mid;
      }
      cand = 0.5 * (lo + hi);
    } else if (pd < 0.0 && d >= 0.0) {
      double lo = a - step, hi = a;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (b0.b0(mid, 0.0, 1) < 0.0 ? lo : hi) = mid;
      }
      const double m = 0.5 * (lo + hi);
      if (std::abs(b0.b0(m, 0.0, 0)) <= 1e-10 * std::max(ref, 1.0)) cand = m;
    }
    if (std::isfinite(cand)) {
      a1 = cand;
      break;
    }
    pv = v;
    pd = d;
  }
  if (!std::isfinite(a1))
    throw NoZeroAhead("decay_rate_experiment: no zero of b0 within search range");

  DecayRateResult res;
  res.a1 = a1;
  int order = 0;
  for (int m = 1; m <= 6; ++m) {
    if (std::abs(b0.b0(a1, 0.0, m)) > 1e-6) {
      order = m;
      break;
    }
  }
  if (order == 0) throw NoZeroAhead("decay_rate_experiment: vanishing order > 6");
  res.vanishing_order = order;
  res.exponential = (order == 1);

  EffectiveState init;
  const double c0 = std::sqrt(3.0 * b0.b0(a0, 0.0, 0));
  init.a = {a0, a0};
  init.c = {c0, c0};
  EffectiveOptions dopts = opts;
  dopts.halt_on_violation = false;
  dopts.store_stride = 100;
  const EffectiveTrajectory traj =
      integrate_effective(EffectiveKind::Decoupled, init, b0, T_end, dopts);

  std::vector<double> xs, ys;
  for (const auto& s : traj.states) {
    if (s.t < 0.2 * T_end) continue;  // fit the late-time tail
    const double c = std::abs(s.c[0]);
    if (c <= 0) continue;
    xs.push_back(res.exponential ? s.t : std::log(s.t));
    ys.push_back(std::log(c));
  }
  const LinearFit fit = linear_fit(xs, ys);
  res.fitted_exponent = fit.slope;
  res.r2 = fit.r2;
  return res;
}

}  // namespace mkdv
