#pragma once

#include <stdexcept>
#include <string>

namespace schurgate {

// Bad user input: malformed parameters, invalid group data, out-of-range bounds.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exact arithmetic failure (division by zero, non-coprime Galois residue).
struct ArithmeticError : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised when a cyclotomic conductor exceeds the configured cap.
struct ConductorOverflow : ArithmeticError {
    using ArithmeticError::ArithmeticError;
};

// A property that must hold by construction was found violated.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace schurgate
