#pragma once

#include <stdexcept>
#include <string>

namespace optrec {

// Bad run configuration (resolutions, block counts, malformed specs).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematical premise of the method is violated (kernel positivity,
// square-integrability bound, essential non-negativity, wrong class variant).
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values, overflow, series that fail to converge.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Measurement data admits no feasible function in the class.
class InconsistentData : public std::runtime_error {
public:
  explicit InconsistentData(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace optrec
