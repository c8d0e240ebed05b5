#include "mkdv/solver.hpp"

#include <algorithm>
#include <cmath>

#include "mkdv/errors.hpp"
#include "mkdv/functionals.hpp"
#include "mkdv/spectral.hpp"

namespace mkdv {

Stepper::Stepper(const SolverConfig& cfg, const PotentialSpec& b) : cfg_(cfg), b_(b) {
  const std::size_t nm = cfg_.grid.n() / 2 + 1;
  hat_.resize(nm);
  half_phase_.resize(nm);
  mask_.assign(nm, 1.0);
  sa_.resize(nm);
  sb_.resize(nm);
  sc_.resize(nm);
  sd_.resize(nm);
  stage_.resize(nm);
  phys_.resize(cfg_.grid.n());
  const auto& k = cfg_.grid.k();
  for (std::size_t m = 0; m < nm; ++m) {
    const double k3 = k[m] * k[m] * k[m];
    half_phase_[m] = std::polar(1.0, k3 * cfg_.dt * 0.5);
  }
  std::size_t cut = nm;  // index of first masked mode
  if (cfg_.dealias == SolverConfig::Dealias::TwoThirds) cut = cfg_.grid.n() / 3 + 1;
  if (cfg_.dealias == SolverConfig::Dealias::Half) cut = cfg_.grid.n() / 4 + 1;
  for (std::size_t m = cut; m < nm; ++m) mask_[m] = 0.0;
}

void Stepper::set_state(const FieldState& s) {
  if (!(s.u.grid == cfg_.grid)) throw std::invalid_argument("Stepper: grid mismatch");
  t_ = s.t;
  workspace_for(cfg_.grid.n()).forward(s.u.values.data(), hat_.data());
  guard_ = cfg_.blowup_factor * std::max(s.u.max_abs(), 1e-12);
}

FieldState Stepper::state() const {
  FieldSample u(cfg_.grid);
  workspace_for(cfg_.grid.n()).inverse(hat_.data(), u.values.data());
  return FieldState(t_, std::move(u));
}

void Stepper::nonlinear(double t, const std::vector<std::complex<double>>& hat,
                        std::vector<std::complex<double>>& out) {
  auto& ws = workspace_for(cfg_.grid.n());
  const std::size_t nm = hat.size();
  for (std::size_t m = 0; m < nm; ++m) stage_[m] = hat[m] * mask_[m];
  ws.inverse(stage_.data(), phys_.data());
  const bool with_b = !b_.empty();
  for (std::size_t j = 0; j < phys_.size(); ++j) {
    const double u = phys_[j];
    double w = 2.0 * u * u * u;
    if (with_b) w -= b_.line(cfg_.grid.x()[j], t, 0) * u;
    phys_[j] = w;
  }
  ws.forward(phys_.data(), out.data());
  const auto& k = cfg_.grid.k();
  for (std::size_t m = 0; m < nm; ++m)
    out[m] *= std::complex<double>(0.0, -k[m]) * mask_[m];
}

void Stepper::advance(std::size_t steps) {
  auto& ws = workspace_for(cfg_.grid.n());
  const std::size_t nm = hat_.size();
  const double dt = cfg_.dt;
  for (std::size_t s = 0; s < steps; ++s) {
    nonlinear(t_, hat_, sa_);
    for (std::size_t m = 0; m < nm; ++m)
      stage_[m] = half_phase_[m] * (hat_[m] + 0.5 * dt * sa_[m]);
    nonlinear(t_ + 0.5 * dt, stage_, sb_);
    for (std::size_t m = 0; m < nm; ++m)
      stage_[m] = half_phase_[m] * hat_[m] + 0.5 * dt * sb_[m];
    nonlinear(t_ + 0.5 * dt, stage_, sc_);
    for (std::size_t m = 0; m < nm; ++m)
      stage_[m] = half_phase_[m] * (half_phase_[m] * hat_[m] + dt * sc_[m]);
    nonlinear(t_ + dt, stage_, sd_);
    for (std::size_t m = 0; m < nm; ++m) {
      const auto e1 = half_phase_[m] * half_phase_[m];
      hat_[m] = e1 * hat_[m] +
                dt / 6.0 *
                    (e1 * sa_[m] + 2.0 * half_phase_[m] * (sb_[m] + sc_[m]) + sd_[m]);
    }
    t_ += dt;

    ws.inverse(hat_.data(), phys_.data());
    double amp = 0.0;
    for (double v : phys_) amp = std::max(amp, std::abs(v));
    if (!std::isfinite(amp) || amp > guard_)
      throw BlowUp("solver amplitude guard tripped", t_);
  }
}

FieldState step(const FieldState& s, const SolverConfig& cfg, const PotentialSpec& b) {
  Stepper st(cfg, b);
  st.set_state(s);
  st.advance(1);
  return st.state();
}

IntegrationResult integrate(const FieldState& u0, const SolverConfig& cfg,
                            const PotentialSpec& b) {
  Stepper st(cfg, b);
  st.set_state(u0);
  IntegrationResult res;
  res.snapshots.push_back(st.state());

  const std::size_t total = static_cast<std::size_t>(
      std::llround(std::max(0.0, (cfg.t_end - u0.t) / cfg.dt)));
  const std::size_t stride = std::max<std::size_t>(1, cfg.record_stride);
  std::size_t done = 0;
  while (done < total) {
    const std::size_t chunk = std::min(stride, total - done);
    st.advance(chunk);
    done += chunk;
    res.snapshots.push_back(st.state());
  }

  // Conservation drifts and the b-weighted momentum growth law.
  const ConservedReport c0 = conserved(res.snapshots.front().u, 1e99);
  double law = 0.0;
  std::vector<double> growth(res.snapshots.size(), 0.0);
  for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
    const auto& snap = res.snapshots[i];
    const ConservedReport ci = conserved(snap.u, 1e99);
    res.drift.i1_drift = std::max(res.drift.i1_drift, std::abs(ci.i1 - c0.i1));
    res.drift.i3_drift = std::max(res.drift.i3_drift, std::abs(ci.i3 - c0.i3));
    res.drift.i5_drift = std::max(res.drift.i5_drift, std::abs(ci.i5 - c0.i5));
    if (!b.empty()) {
      FieldSample a1(snap.u.grid);
      for (std::size_t j = 0; j < a1.values.size(); ++j)
        a1.values[j] = snap.u.values[j] * snap.u.values[j];
      growth[i] = inner(b.sample_line(snap.u.grid, snap.t, 1), a1);
      if (i > 0) {
        double integral = 0.0;
        for (std::size_t m = 1; m <= i; ++m)
          integral += 0.5 * (growth[m] + growth[m - 1]) *
                      (res.snapshots[m].t - res.snapshots[m - 1].t);
        law = std::max(law, std::abs(ci.i1 - c0.i1 - integral));
      }
    }
  }
  res.drift.momentum_law_residual = law;
  return res;
}

RescaledProblem rescale_to_line(const FieldState& U, const PotentialSpec& B, double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("rescale_to_line: alpha must be positive");
  const LineGrid line_grid(U.u.grid.n(), U.u.grid.half_length() / alpha);
  FieldSample u(line_grid);
  for (std::size_t j = 0; j < u.values.size(); ++j) u.values[j] = alpha * U.u.values[j];
  RescaledProblem out{FieldState(U.t / (alpha * alpha * alpha), std::move(u)),
                      B.rescaled(alpha), alpha};
  out.b.h = 1.0;  // terms now evaluate the line field directly
  return out;
}

}  // namespace mkdv
