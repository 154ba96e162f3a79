#pragma once

#include <stdexcept>

namespace tnlab {

// A metric or linear system is numerically singular.
struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// span(u, v) is too close to a line for a curvature quotient.
struct DegeneratePlaneError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ZeroFlagpoleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Zermelo conversion guards.
struct WindTooStrongError : std::domain_error {
  using std::domain_error::domain_error;
};
struct InvalidRandersError : std::domain_error {
  using std::domain_error::domain_error;
};

// Chart guards for the fibered ansatz metrics.
struct OutsideChartError : std::domain_error {
  using std::domain_error::domain_error;
};
struct ChartPositivityError : std::domain_error {
  using std::domain_error::domain_error;
};

// Killing classification could not pin the solution space.
struct UnderdeterminedSamplingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Command-line configuration problems (exit code 1).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tnlab
