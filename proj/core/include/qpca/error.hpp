#pragma once

#include <stdexcept>
#include <string>

namespace qpca {

// Caller passed something that violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input is well-formed but carries no usable energy (all-zero data, zero vector).
class DegenerateInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative method failed, or a quantity that must be real/orthonormal was not.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qpca
