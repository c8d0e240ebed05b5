#pragma once

#include <string>
#include <vector>

#include "mkdv/grid.hpp"

namespace mkdv {

// One trigonometric term amp * K(inner*y + phase + tfreq*s).
struct PotentialTerm {
  enum class Kind { Cos, Sin, Cos2 };
  double amplitude = 0.0;
  double inner = 1.0;
  double phase = 0.0;
  double tfreq = 0.0;
  Kind kind = Kind::Cos;
};

// Slowly varying external field as a trigonometric sum. The terms define
// b0(y, s); on the line the potential is b(x,t) = b0(h x, h t), on the unit
// box it is evaluated directly as B(X, T).
struct PotentialSpec {
  std::vector<PotentialTerm> terms;
  double h = 1.0;

  bool empty() const { return terms.empty(); }

  // d^order/dy^order b0(y, s).
  double b0(double y, double s, int order = 0) const;
  // d^order/dx^order b(x,t) = b0(hx, ht); each x-derivative brings a factor h.
  double line(double x, double t, int order = 0) const;
  double box(double X, double T, int order = 0) const { return b0(X, T, order); }

  // u(x,t) = alpha U(alpha x, alpha^3 t) maps B into alpha^2 B(alpha x, alpha^3 t).
  PotentialSpec rescaled(double alpha) const;

  FieldSample sample_line(const LineGrid& g, double t, int order = 0) const;
};

// The built-in catalog of box potentials ("listex1".."listex4"); throws
// ConfigError for unknown names.
PotentialSpec potential_preset(const std::string& name);

}  // namespace mkdv
