#pragma once

#include <stdexcept>
#include <string>

namespace mkdv {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Soliton parameters on or too close to the degenerate set C.
struct DegenerateParams : Error {
  using Error::Error;
};

// A field does not decay below tolerance at the grid edges.
struct GridTooSmall : Error {
  using Error::Error;
};

// d_x^{-1} requested for a field with non-vanishing integral.
struct NonZeroMean : Error {
  using Error::Error;
};

struct BlowUp : Error {
  BlowUp(const std::string& msg, double time) : Error(msg), t(time) {}
  double t;
};

struct NoConvergence : Error {
  using Error::Error;
};

struct TrackingLost : Error {
  TrackingLost(const std::string& msg, std::size_t idx) : Error(msg), index(idx) {}
  std::size_t index;
};

struct NoCrossing : Error {
  using Error::Error;
};

struct NoZeroAhead : Error {
  using Error::Error;
};

struct StepFailure : Error {
  using Error::Error;
};

struct InvalidC : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace mkdv
