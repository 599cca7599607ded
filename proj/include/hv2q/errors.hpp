#pragma once

#include <stdexcept>
#include <string>

namespace hv2q {

// Numerical-consistency failure: residual too large, solver did not
// converge, or two independent computation routes disagree.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical invariant the construction guarantees was violated.
// Signals a bug in this library, never a user error.
struct InvariantViolation : std::logic_error {
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace hv2q
