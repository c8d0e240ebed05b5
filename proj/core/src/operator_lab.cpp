#include "mkdv/operator_lab.hpp"

#include <cmath>

#include "mkdv/errors.hpp"
#include "mkdv/functionals.hpp"
#include "mkdv/spectral.hpp"

namespace mkdv {

namespace {

// Dense Fourier differentiation matrix of the given order (or the (1+k^2)^2
// H^2 multiplier when order < 0), built by applying the spectral operation to
// unit vectors; exact for grid-resolved fields.
Eigen::MatrixXd spectral_matrix(const LineGrid& g, int order) {
  const std::size_t n = g.n();
  auto& ws = workspace_for(n);
  std::vector<std::complex<double>> hat(ws.n_modes());
  std::vector<double> col(n), unit(n, 0.0);
  Eigen::MatrixXd M(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    unit[j] = 1.0;
    ws.forward(unit.data(), hat.data());
    unit[j] = 0.0;
    const auto& k = g.k();
    for (std::size_t m = 0; m < hat.size(); ++m) {
      if (order < 0) {
        const double w = (1.0 + k[m] * k[m]) * (1.0 + k[m] * k[m]);
        hat[m] *= w;
      } else {
        hat[m] *= std::pow(std::complex<double>(0.0, k[m]), order);
      }
    }
    if (order > 0 && order % 2 != 0) hat.back() = 0.0;
    ws.inverse(hat.data(), col.data());
    for (std::size_t i = 0; i < n; ++i) M(i, j) = col[i];
  }
  return 0.5 * (M + M.transpose().eval());
}

Eigen::MatrixXd hessian_matrix(const LineGrid& g, const std::vector<double>& q,
                               const std::vector<double>& qx,
                               const std::vector<double>& qxx, double c1sq,
                               double c2sq) {
  const std::size_t n = g.n();
  const Eigen::MatrixXd D1 = spectral_matrix(g, 1);
  const Eigen::MatrixXd D2 = spectral_matrix(g, 2);

  Eigen::MatrixXd M = 2.0 * (D2 * D2).eval();
  M -= 2.0 * (c1sq + c2sq) * D2;
  Eigen::VectorXd q2v(n), pot(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double qq = q[i];
    q2v(i) = qq * qq;
    pot(i) = 2.0 * c1sq * c2sq + 20.0 * qx[i] * qx[i] + 40.0 * qq * qxx[i] +
             60.0 * qq * qq * qq * qq - 12.0 * (c1sq + c2sq) * qq * qq;
  }
  M += 20.0 * (D1 * q2v.asDiagonal() * D1).eval();
  M += pot.asDiagonal();
  return 0.5 * (M + M.transpose().eval());
}

}  // namespace

OperatorMatrix assemble_K(const SolitonParams& p, const LineGrid& grid) {
  const Q2Partials parts = q2_partials(p, grid);
  if (parts.q.edge_abs() > 1e-6)
    throw GridTooSmall("assemble_K: q does not decay at the grid edges");
  std::vector<double> qx(grid.n());
  for (std::size_t i = 0; i < grid.n(); ++i)
    qx[i] = -(parts.da1.values[i] + parts.da2.values[i]);
  const FieldSample qxx = derivative(FieldSample(grid, qx), 1);
  OperatorMatrix op{hessian_matrix(grid, parts.q.values, qx, qxx.values,
                                   p.c[0] * p.c[0], p.c[1] * p.c[1]),
                    grid, OperatorMatrix::Kind::K, p, 0.0};
  return op;
}

OperatorMatrix assemble_P(double c, const LineGrid& grid) {
  const std::size_t n = grid.n();
  std::vector<double> e(n), ex(n), exx(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.x()[i];
    e[i] = eta(x, 0.0, 1.0);
    ex[i] = eta_dx(x, 0.0, 1.0);
    exx[i] = e[i] - 2.0 * e[i] * e[i] * e[i];
  }
  OperatorMatrix op{0.5 * hessian_matrix(grid, e, ex, exx, c * c, 1.0),
                    grid, OperatorMatrix::Kind::P, SolitonParams{}, c};
  return op;
}

LineGrid operator_grid(const SolitonParams& p, std::size_t n_points) {
  const double cmin = std::min(std::abs(p.c[0]), std::abs(p.c[1]));
  const double amax = std::max(std::abs(p.a[0]), std::abs(p.a[1]));
  return LineGrid(n_points, 20.0 / cmin + amax);
}

SpectrumSummary spectrum_summary(const OperatorMatrix& op, double kernel_tol_factor) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.m,
                                                        Eigen::EigenvaluesOnly);
  SpectrumSummary s;
  s.eigenvalues = solver.eigenvalues();
  const double radius =
      std::max(std::abs(s.eigenvalues(0)), std::abs(s.eigenvalues(s.eigenvalues.size() - 1)));
  s.kernel_tol = kernel_tol_factor * radius;
  if (op.kind == OperatorMatrix::Kind::K) {
    const double c1 = op.params.c[0], c2 = op.params.c[1];
    s.continuous_threshold = 2.0 * c1 * c1 * c2 * c2;
  } else {
    s.continuous_threshold = op.c_scalar * op.c_scalar;  // min(1, c^2) edge of P(c)
    s.continuous_threshold = std::min(1.0, s.continuous_threshold);
  }
  s.smallest_positive = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double l = s.eigenvalues(i);
    if (l < -s.kernel_tol) ++s.n_negative;
    else if (l <= s.kernel_tol) ++s.kernel_dim;
    else s.smallest_positive = std::min(s.smallest_positive, l);
    if (l > s.kernel_tol && l < s.continuous_threshold)
      s.discrete_below_threshold.push_back(l);
  }
  return s;
}

std::vector<FieldSample> symplectic_constraints(const SolitonParams& p,
                                                const LineGrid& grid) {
  const Q2Partials parts = q2_partials(p, grid);
  return {antiderivative(parts.da1, 1e-6), antiderivative(parts.da2, 1e-6),
          antiderivative(parts.dc1, 1e-6), antiderivative(parts.dc2, 1e-6)};
}

double coercivity_estimate(const OperatorMatrix& op,
                           const std::vector<FieldSample>& constraints) {
  const std::size_t n = op.grid.n();
  const Eigen::MatrixXd G = spectral_matrix(op.grid, -1);  // H^2 Gram
  if (constraints.empty()) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(
        op.m, G, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    return ges.eigenvalues()(0);
  }
  Eigen::MatrixXd C(n, constraints.size());
  for (std::size_t j = 0; j < constraints.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) C(i, j) = constraints[j].values[i];
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(C);
  const Eigen::MatrixXd Q = qr.householderQ();
  const Eigen::MatrixXd Z = Q.rightCols(n - constraints.size());
  const Eigen::MatrixXd A = Z.transpose() * op.m * Z;
  const Eigen::MatrixXd B = Z.transpose() * G * Z;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(
      0.5 * (A + A.transpose().eval()), 0.5 * (B + B.transpose().eval()),
      Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  return ges.eigenvalues()(0);
}

double reference_r1(double x) {
  const double s = std::sinh(0.5 * x), c = std::cosh(0.5 * x);
  return -s / (2.0 * c * c);
}

double reference_r1_dx(double x) {
  const double c = std::cosh(0.5 * x);
  return (c * c - 2.0) / (4.0 * c * c * c);
}

double reference_r2(double x) {
  const double s = std::sinh(0.5 * x), c = std::cosh(0.5 * x);
  return s * (9.0 - 2.0 * c * c) / (4.0 * c * c * c * c);
}

double reference_r2_dx(double x) {
  const double s = std::sinh(0.5 * x), c = std::cosh(0.5 * x);
  const double s2 = s * s, c2 = c * c;
  return (0.5 * c2 * (9.0 - 2.0 * c2) - 2.0 * c2 * s2 - 2.0 * s2 * (9.0 - 2.0 * c2)) /
         (4.0 * c2 * c2 * c);
}

RootCountResult root_count_reference(double x_min, double x_max,
                                     std::size_t scan_points) {
  auto det = [](double x) {
    return reference_r1(x) * reference_r2_dx(x) - reference_r2(x) * reference_r1_dx(x);
  };
  RootCountResult res;
  const double dx = (x_max - x_min) / static_cast<double>(scan_points - 1);
  double prev = det(x_min);
  for (std::size_t i = 1; i < scan_points; ++i) {
    const double x = x_min + dx * static_cast<double>(i);
    const double cur = det(x);
    if (prev == 0.0 || prev * cur < 0.0) {
      double lo = x - dx, hi = x;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (det(lo) * det(mid) <= 0.0 ? hi : lo) = mid;
      }
      const double root = 0.5 * (lo + hi);
      if (res.locations.empty() || std::abs(root - res.locations.back()) > 10.0 * dx) {
        // rank of the Wronskian matrix at the root via its singular values
        Eigen::Matrix2d W;
        W << reference_r1(root), reference_r1_dx(root), reference_r2(root),
            reference_r2_dx(root);
        Eigen::JacobiSVD<Eigen::Matrix2d> svd(W);
        const double s0 = svd.singularValues()(0);
        const double s1 = svd.singularValues()(1);
        int dim = 0;
        if (s0 <= 1e-8) dim = 2;
        else if (s1 <= 1e-8 * s0) dim = 1;
        if (dim > 0) {
          res.count += dim;
          res.locations.push_back(root);
        }
      }
    }
    prev = cur;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Appendix C: rational-coefficient operator and explicit basis (long double).

namespace {

using ld = long double;

ld basis_v(int i, ld z, ld c) {
  const ld one = 1.0L;
  switch (i) {
    case 0:
      return z * std::sqrt(one - z * z);
    case 1:
      return std::pow(one + z, -c / 2) * std::pow(one - z, c / 2) *
             ((c + z) * (c + z) + z * z - one);
    case 2:
      return basis_v(1, -z, c);
    case 3: {
      // The odd log-coefficient polynomial collapses onto v1; the remaining
      // real branch is (7-3c^2) v1 log((1+z)/(1-z)) + (4c^2-6c^2 z^2+14z^2-12)/sqrt(1-z^2).
      const ld lg = std::log((one + z) / (one - z));
      return (7.0L - 3.0L * c * c) * z * std::sqrt(one - z * z) * lg +
             (4.0L * c * c - 6.0L * c * c * z * z + 14.0L * z * z - 12.0L) /
                 std::sqrt(one - z * z);
    }
  }
  return 0.0L;
}

// 11-point centered finite-difference weights for derivatives 1..4 on a
// uniform stencil (Fornberg), precomputed for unit step.
struct StencilWeights {
  ld w[4][11];
  StencilWeights() {
    // Fornberg's recursion for nodes -5..5 at x0 = 0, derivatives up to 4.
    const int nn = 10, mm = 4;
    ld x[11];
    for (int i = 0; i <= nn; ++i) x[i] = static_cast<ld>(i - 5);
    static ld d[11][11][5];
    for (auto& a : d)
      for (auto& b : a)
        for (auto& v : b) v = 0.0L;
    d[0][0][0] = 1.0L;
    ld c1 = 1.0L;
    for (int n = 1; n <= nn; ++n) {
      ld c2 = 1.0L;
      for (int v = 0; v < n; ++v) {
        const ld c3 = x[n] - x[v];
        c2 *= c3;
        for (int m = 0; m <= std::min(n, mm); ++m) {
          d[n][v][m] = (x[n] * d[n - 1][v][m] -
                        (m > 0 ? static_cast<ld>(m) * d[n - 1][v][m - 1] : 0.0L)) /
                       c3;
        }
      }
      for (int m = 0; m <= std::min(n, mm); ++m) {
        d[n][n][m] = c1 / c2 *
                     ((m > 0 ? static_cast<ld>(m) * d[n - 1][n - 1][m - 1] : 0.0L) -
                      x[n - 1] * d[n - 1][n - 1][m]);
      }
      c1 = c2;
    }
    for (int m = 1; m <= 4; ++m)
      for (int v = 0; v <= nn; ++v) w[m - 1][v] = d[nn][v][m];
  }
};

const StencilWeights& stencil() {
  static StencilWeights s;
  return s;
}

// Q(c) applied with FD derivatives; step scaled to the distance from +-1.
ld apply_Q(int i, ld z, ld c, ld step_factor) {
  const ld h = step_factor * (1.0L - std::abs(z));
  ld f[5];  // f, f', f'', f''', f''''
  f[0] = basis_v(i, z, c);
  ld samples[11];
  for (int j = 0; j < 11; ++j) samples[j] = basis_v(i, z + h * static_cast<ld>(j - 5), c);
  const auto& wts = stencil();
  for (int m = 1; m <= 4; ++m) {
    ld acc = 0.0L;
    for (int j = 0; j < 11; ++j) acc += wts.w[m - 1][j] * samples[j];
    f[m] = acc / std::pow(h, static_cast<ld>(m));
  }
  const ld zm = z - 1.0L, zp = z + 1.0L;
  const ld c2 = c * c;
  const ld t4 = std::pow(zm, 4.0L) * std::pow(zp, 4.0L) * f[4];
  const ld t3 = 12.0L * z * std::pow(zm, 3.0L) * std::pow(zp, 3.0L) * f[3];
  const ld t2 = zm * zm * zp * zp * (26.0L * z * z - c2 + 1.0L) * f[2];
  const ld t1 = -2.0L * z * zm * zp * (8.0L * z * z - 11.0L + c2) * f[1];
  const ld t0 = (4.0L - 20.0L * z * z + 6.0L * c2 * z * z - 5.0L * c2 + 16.0L * z * z) * f[0];
  return t4 + t3 + t2 + t1 + t0;
}

}  // namespace

AppendixCResult appendix_c_check(double c, const AppendixCOptions& opts) {
  if (!(c > 0.0) || std::abs(c - 1.0) < 1e-12)
    throw InvalidC("appendix_c_check: c must be positive and != 1");
  AppendixCResult res;
  const ld cc = static_cast<ld>(c);

  // tanh-clustered grid keeping margin from the endpoints
  const double wmax = std::atanh(1.0 - opts.margin);
  for (std::size_t j = 0; j < opts.n_points; ++j) {
    const double w =
        -wmax + 2.0 * wmax * static_cast<double>(j) / static_cast<double>(opts.n_points - 1);
    const ld z = std::tanh(static_cast<ld>(w));
    for (int i = 0; i < 4; ++i) {
      const double r = static_cast<double>(apply_Q(i, z, cc, opts.step_factor));
      res.residual_sup[i] = std::max(res.residual_sup[i], std::abs(r));
    }
  }

  // Boundedness classification: slope of log|v| against log(1 - |z|) on a
  // geometric approach to each endpoint; growth (negative slope) = unbounded.
  for (int i = 0; i < 4; ++i) {
    double min_slope = std::numeric_limits<double>::infinity();
    for (int end = 0; end < 2; ++end) {
      std::vector<double> xs, ys;
      for (int k = 1; k <= 5; ++k) {
        const ld dist = std::pow(10.0L, static_cast<ld>(-k));
        const ld z = (end == 0 ? -(1.0L - dist) : (1.0L - dist));
        const ld v = std::abs(basis_v(i, z, cc));
        if (v <= 0.0L) continue;
        xs.push_back(static_cast<double>(-k) * std::log(10.0));
        ys.push_back(static_cast<double>(std::log(v)));
      }
      if (xs.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t m = 0; m < xs.size(); ++m) {
          sx += xs[m];
          sy += ys[m];
          sxx += xs[m] * xs[m];
          sxy += xs[m] * ys[m];
        }
        const double n = static_cast<double>(xs.size());
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        min_slope = std::min(min_slope, slope);
      }
    }
    res.endpoint_slopes[i] = min_slope;
    res.bounded[i] = min_slope > -0.05;
  }
  return res;
}

}  // namespace mkdv
