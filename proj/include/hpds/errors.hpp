#pragma once

#include <stdexcept>
#include <string>

namespace hpds {

/// Malformed input: bad shapes, unparsable files, out-of-range arguments.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A structural hypothesis of an algorithm does not hold for the given data
/// (e.g. a tensor that is required to be symmetric is not).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Floating-point breakdown that is not an expected outcome of the method.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a symmetric tensor is not orthogonally decomposable.
class NotOdeco : public PreconditionError {
public:
    NotOdeco(double off_diagonal_mass, double tol)
        : PreconditionError("tensor is not orthogonally decomposable: relative off-diagonal core mass " +
                            std::to_string(off_diagonal_mass) + " exceeds " + std::to_string(tol)),
          off_diagonal_mass_(off_diagonal_mass) {}

    [[nodiscard]] double off_diagonal_mass() const noexcept { return off_diagonal_mass_; }

private:
    double off_diagonal_mass_;
};

}  // namespace hpds
