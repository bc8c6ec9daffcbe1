#pragma once

#include <stdexcept>
#include <string>

namespace cmbvs {

// Error taxonomy mirrored by the CLI exit-status contract:
// usage errors -> 1, data errors -> 2, numerical failures -> 3.

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data (ingestion, validation).
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration values (thresholds, dimensions, hyperparameters).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : ConfigError {
  explicit DimensionError(const std::string& msg) : ConfigError(msg) {}
};

// Out-of-domain numerical input (log of zero, nonpositive concentration).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical range failure inside a running chain (overflow, nonfinite ratio).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cmbvs
