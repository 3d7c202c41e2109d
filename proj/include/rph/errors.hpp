#pragma once

#include <stdexcept>
#include <string>

namespace rph {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text (bad JSON, missing fields, wrong value types).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Number of polynomials does not match the number of variables.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A polynomial reduces to fewer than two terms.
class DegenerateSystemError : public Error {
public:
    using Error::Error;
};

/// The lifting produces an exact tie on a candidate cell; the induced
/// subdivision is not fine and no certificate can be built from it.
class DegenerateLiftingError : public Error {
public:
    using Error::Error;
};

/// Random liftings kept hitting ties past the retry cap.
class GenericityFailureError : public Error {
public:
    using Error::Error;
};

/// Scaled lifting values exceed the exact integer range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A matrix required to be invertible is singular (exponent matrices,
/// Jacobians outside the corrector loop).
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// A homotopy exponent came out significantly negative, meaning the cell
/// and the lifting passed to the builder do not belong together.
class ConventionViolationError : public Error {
public:
    using Error::Error;
};

} // namespace rph
