#pragma once

#include <stdexcept>
#include <string>

namespace steerxy {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments or configuration, detected before numerics start.
struct ValidationError : Error {
    using Error::Error;
};

// Failure during evaluation: quadrature budget exhausted, degenerate mode,
// extremum on a grid boundary, and the like.
struct NumericalError : Error {
    using Error::Error;
};

// A Pauli correlation set that does not describe a physical state.
// Carries the offending minimum eigenvalue of the assembled matrix.
struct NonPositiveStateError : Error {
    double min_eigenvalue;
    explicit NonPositiveStateError(double min_eig);
};

}  // namespace steerxy
