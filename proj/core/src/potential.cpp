#include "mkdv/potential.hpp"

#include <cmath>

#include "mkdv/errors.hpp"

namespace mkdv {

namespace {

double term_value(const PotentialTerm& t, double y, double s, int order) {
  const double theta = t.inner * y + t.phase + t.tfreq * s;
  const double shift = 0.5 * M_PI * order;
  switch (t.kind) {
    case PotentialTerm::Kind::Cos:
      return t.amplitude * std::pow(t.inner, order) * std::cos(theta + shift);
    case PotentialTerm::Kind::Sin:
      return t.amplitude * std::pow(t.inner, order) * std::sin(theta + shift);
    case PotentialTerm::Kind::Cos2: {
      // cos^2(theta) = 1/2 + cos(2 theta)/2
      if (order == 0) {
        const double c = std::cos(theta);
        return t.amplitude * c * c;
      }
      return t.amplitude * 0.5 * std::pow(2.0 * t.inner, order) *
             std::cos(2.0 * theta + shift);
    }
  }
  return 0.0;
}

}  // namespace

double PotentialSpec::b0(double y, double s, int order) const {
  double v = 0.0;
  for (const auto& t : terms) v += term_value(t, y, s, order);
  return v;
}

double PotentialSpec::line(double x, double t, int order) const {
  return std::pow(h, order) * b0(h * x, h * t, order);
}

PotentialSpec PotentialSpec::rescaled(double alpha) const {
  PotentialSpec out = *this;
  for (auto& t : out.terms) {
    t.amplitude *= alpha * alpha;
    t.inner *= alpha;
    t.tfreq *= alpha * alpha * alpha;
  }
  return out;
}

FieldSample PotentialSpec::sample_line(const LineGrid& g, double t, int order) const {
  FieldSample out(g);
  for (std::size_t j = 0; j < g.n(); ++j) out.values[j] = line(g.x()[j], t, order);
  return out;
}

PotentialSpec potential_preset(const std::string& name) {
  using K = PotentialTerm::Kind;
  PotentialSpec p;
  if (name == "listex1") {
    p.terms = {{100.0, 1.0, 0.0, -1000.0, K::Cos2}, {-50.0, 2.0, 0.0, 1000.0, K::Sin}};
  } else if (name == "listex2") {
    p.terms = {{100.0, 1.0, 0.0, -1000.0, K::Cos2}, {50.0, 2.0, 0.0, 1000.0, K::Sin}};
  } else if (name == "listex3") {
    p.terms = {{60.0, 1.0, 1.0, -100.0, K::Cos2}, {40.0, 2.0, 2.0, 100.0, K::Sin}};
  } else if (name == "listex4") {
    p.terms = {{40.0, 2.0, 3.0, -100.0, K::Cos}, {30.0, 1.0, 1.0, 100.0, K::Sin}};
  } else if (name == "cos2") {
    p.terms = {{1.0, 1.0, 0.0, 0.0, K::Cos2}};
  } else if (name == "zero" || name.empty()) {
    // no terms
  } else {
    throw ConfigError("unknown potential preset: " + name);
  }
  return p;
}

}  // namespace mkdv
