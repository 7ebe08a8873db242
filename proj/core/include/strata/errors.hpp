#pragma once

#include <stdexcept>

namespace strata {

/// Unreadable input or unwritable output. Fatal for the current run.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid configuration. Fatal before the run starts.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace strata
