#include "mkdv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mkdv {

LineGrid::LineGrid(std::size_t n_points, double half_length)
    : n_(n_points), half_length_(half_length) {
  if (n_ < 8 || (n_ & (n_ - 1)) != 0)
    throw std::invalid_argument("LineGrid: n_points must be a power of two >= 8");
  if (!(half_length > 0))
    throw std::invalid_argument("LineGrid: half_length must be positive");
  dx_ = 2.0 * half_length_ / static_cast<double>(n_);
  x_.resize(n_);
  for (std::size_t j = 0; j < n_; ++j)
    x_[j] = -half_length_ + dx_ * static_cast<double>(j);
  const double k0 = M_PI / half_length_;
  k_.resize(n_ / 2 + 1);
  for (std::size_t m = 0; m <= n_ / 2; ++m) k_[m] = k0 * static_cast<double>(m);
}

FieldSample::FieldSample(const LineGrid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
  if (values.size() != grid.n())
    throw std::invalid_argument("FieldSample: size mismatch with grid");
}

double FieldSample::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double FieldSample::edge_abs() const {
  const std::size_t n = values.size();
  const std::size_t w = std::max<std::size_t>(2, n / 128);
  double m = 0.0;
  for (std::size_t j = 0; j < w; ++j) {
    m = std::max(m, std::abs(values[j]));
    m = std::max(m, std::abs(values[n - 1 - j]));
  }
  return m;
}

double integrate(const FieldSample& f) {
  // On the periodic grid the trapezoid rule is the plain sum times dx.
  double s = std::accumulate(f.values.begin(), f.values.end(), 0.0);
  return s * f.grid.dx();
}

double inner(const FieldSample& f, const FieldSample& g) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("inner: grid mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < f.values.size(); ++j) s += f.values[j] * g.values[j];
  return s * f.grid.dx();
}

}  // namespace mkdv
