#pragma once

#include <stdexcept>

namespace idlms {

// Invalid or inconsistent run configuration (bad bounds, unknown keys,
// streams too short for the requested horizon, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: singular or ill-conditioned systems, covariance
// matrices that are not positive definite.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace idlms
