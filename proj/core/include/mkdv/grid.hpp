#pragma once

#include <cstddef>
#include <vector>

namespace mkdv {

// Uniform periodic grid on [-L, L) with n points (n a power of two) and the
// integer-multiples-of-pi/L wavenumbers used for spectral differentiation.
class LineGrid {
 public:
  LineGrid(std::size_t n_points, double half_length);

  std::size_t n() const { return n_; }
  double half_length() const { return half_length_; }
  double dx() const { return dx_; }

  const std::vector<double>& x() const { return x_; }
  // Wavenumbers in FFTW r2c layout: k_m = m * pi / L, m = 0..n/2.
  const std::vector<double>& k() const { return k_; }
  double k_max() const { return k_.back(); }

  bool operator==(const LineGrid& o) const {
    return n_ == o.n_ && half_length_ == o.half_length_;
  }

 private:
  std::size_t n_;
  double half_length_;
  double dx_;
  std::vector<double> x_;
  std::vector<double> k_;
};

// Real field sampled on a LineGrid.
struct FieldSample {
  LineGrid grid;
  std::vector<double> values;

  FieldSample(const LineGrid& g) : grid(g), values(g.n(), 0.0) {}
  FieldSample(const LineGrid& g, std::vector<double> v);

  double max_abs() const;
  // Largest |value| among the first/last few samples; used for decay checks.
  double edge_abs() const;
  bool decay_flag(double tol = 1e-8) const { return edge_abs() < tol; }
};

// Trapezoid quadrature of f dx over the grid (spectrally accurate for smooth
// decaying samples on a uniform periodic grid).
double integrate(const FieldSample& f);
double inner(const FieldSample& f, const FieldSample& g);

}  // namespace mkdv
