#pragma once

#include <stdexcept>
#include <string>

namespace sgspec {

/// Precondition violated by caller-supplied parameters.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Problem too large for a dense or exhaustive method (dense_cap, ball_cap).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine failed to converge (eigensolver, rejection sampler).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be read or written; message carries the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sgspec
