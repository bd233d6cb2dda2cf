#pragma once

#include <stdexcept>
#include <string>

namespace fermidiscord {

// Malformed or out-of-contract input (bad indices, invalid distributions,
// schema violations).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical invariant failed after computation (non-convergence,
// inconsistent densities, residual above tolerance).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fermidiscord
