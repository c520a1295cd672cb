#pragma once

#include <stdexcept>
#include <string>

namespace couette {

// Bad user input: config values, CLI arguments, malformed files.  CLI exit code 1.
class validation_error : public std::runtime_error {
public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// The integrator produced a non-finite value or violated an internal invariant.
// CLI exit code 2.
class integration_error : public std::runtime_error {
public:
  explicit integration_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace couette
