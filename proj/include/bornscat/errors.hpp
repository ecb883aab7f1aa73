#pragma once
#include <stdexcept>
#include <string>

namespace bornscat {

/// Raised for invalid inputs, malformed configuration and schema mismatches.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a numerical procedure fails to converge or is ill-posed.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace bornscat
