#pragma once

#include <stdexcept>

namespace ladderlab {

/// Precondition violations: bad grids, labels off the lattice, unknown models.
/// The CLI maps these to exit code 2.
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Failures of a numerical procedure on valid input (non-convergence,
/// annihilated states, level mismatch). The CLI maps these to exit code 3.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ladderlab
