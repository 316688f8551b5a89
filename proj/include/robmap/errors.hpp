#pragma once

#include <stdexcept>
#include <string>

namespace robmap {

// Error taxonomy mirrors the CLI exit-code contract:
//   ConfigError -> 1, ValidationError -> 2, IoError -> 3.

// Bad configuration or usage: invalid parameters, inapplicable plan,
// malformed config document, unknown keys.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Measured or loaded data violates a contract: cross-plan result mismatch,
// malformed surface CSV, out-of-domain values handed to a diagnostic.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failures while reading or writing artifacts.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace robmap
