#pragma once

#include <stdexcept>
#include <string>

namespace covrep {

// Two operands live on different grids.
struct GridMismatchError : std::runtime_error {
    explicit GridMismatchError(const std::string& what) : std::runtime_error(what) {}
};

// A closed-form construction cannot be carried out with the given data
// (no root, singular integrand, degenerate inputs).
struct ConstructionError : std::runtime_error {
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values where finite ones are required.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// A stated precondition of an operation does not hold for the inputs.
struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace covrep
