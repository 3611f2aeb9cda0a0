//
// errors.hpp
//
// Typed failure modes of the solver pipeline. Every throw carries a plain
// message; NotPositive additionally carries the positivity-margin ladder that
// justified the rejection.
//

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bezout {

/// Base class of all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input outside the mathematical domain (|z| > 1, Laurent series at 0, ...).
class DomainError : public Error {
    using Error::Error;
};

/// Dimension or index-range mismatch between operands.
class ShapeError : public Error {
    using Error::Error;
};

/// The Gram operator (or the boundary symbol R) is not strictly positive;
/// the equation has no absolutely-summable solution.
class NotPositive : public Error {
public:
    NotPositive(const std::string& msg, std::vector<std::pair<int, double>> ladder = {})
        : Error(msg), margin_ladder(std::move(ladder)) {}

    /// (section size, smallest Gram eigenvalue) pairs, decreasing in the margin.
    std::vector<std::pair<int, double>> margin_ladder;
};

/// An iteration failed to reach its tolerance within the size cap.
class NoConvergence : public Error {
    using Error::Error;
};

/// A matrix that must be invertible is numerically singular.
class Singular : public Error {
    using Error::Error;
};

/// An eigenvalue cut did not produce the expected rank.
class RankError : public Error {
    using Error::Error;
};

/// The series handed to the parameter-extraction routine does not solve the
/// equation to the configured tolerance.
class NotASolution : public Error {
    using Error::Error;
};

/// Unknown name passed to the built-in example factory.
class UnknownExample : public Error {
    using Error::Error;
};

/// An internal consistency identity failed beyond its gate (indicates a
/// numerically broken instance rather than bad user input).
class NumericalError : public Error {
    using Error::Error;
};

}  // namespace bezout
