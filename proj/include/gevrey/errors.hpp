#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gevrey {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed differential-sum text. `position()` is a 0-based byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A characteristic value of the coefficient recurrence vanished.
class ResonanceError : public Error {
public:
    using Error::Error;
};

/// The seed does not satisfy the leading-order balance, or a prescribed
/// coefficient disagrees with the derived one.
class SeedInconsistent : public Error {
public:
    using Error::Error;
};

/// dF/dw^(n) vanishes identically on the series, so the operator's top
/// coefficient is zero and the polygon is not defined by this construction.
class DegenerateLeadingCoefficient : public Error {
public:
    using Error::Error;
};

/// A coefficient series carries no certified term, so its leading exponent
/// is unknown.
class UncertifiedLeading : public Error {
public:
    using Error::Error;
};

} // namespace gevrey
