#pragma once

#include <stdexcept>
#include <string>

namespace ahmass {

// Metric fails the SPD check at an evaluation point.
struct DegenerateMetricError : std::runtime_error {
  explicit DegenerateMetricError(const std::string& what) : std::runtime_error(what) {}
};

// Point too close to a chart boundary for the requested stencil.
struct DomainMarginError : std::runtime_error {
  explicit DomainMarginError(const std::string& what) : std::runtime_error(what) {}
};

// Point outside the open domain of a chart or transition map.
struct ChartDomainError : std::runtime_error {
  explicit ChartDomainError(const std::string& what) : std::runtime_error(what) {}
};

// Graph slope |df| reaches 1: the hypersurface stops being spacelike.
struct NotSpacelikeError : std::runtime_error {
  explicit NotSpacelikeError(const std::string& what) : std::runtime_error(what) {}
};

// Boost speed outside [0, 1).
struct SuperluminalError : std::runtime_error {
  explicit SuperluminalError(const std::string& what) : std::runtime_error(what) {}
};

// Extrapolation error estimates grow instead of shrinking.
struct DivergenceError : std::runtime_error {
  explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Bad run configuration (unknown family, malformed JSON, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ahmass
