#pragma once

#include <stdexcept>
#include <string>

namespace oplab {

/// Operand shapes do not compose.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A basis failed linear independence; `dependent_index` is the first
/// offending position.
class DegenerateBasisError : public std::invalid_argument {
public:
    DegenerateBasisError(const std::string& msg, int index)
        : std::invalid_argument(msg), dependent_index(index) {}
    int dependent_index;
};

/// An element failed a subspace membership check.
class MembershipError : public std::runtime_error {
public:
    MembershipError(const std::string& msg, double res)
        : std::runtime_error(msg), residual(res) {}
    double residual;
};

/// Numerical failure (SVD non-convergence and friends).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace oplab
