#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Invalid user input (bad boundary law, overlapping spheres, malformed grid).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Robin parameter in the bound-state window -1 < zeta < 0.
class BoundStateError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Numerics left their domain of validity: non-positive arguments, spectral
// radius >= 1, quadrature failing to converge.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace casimir
