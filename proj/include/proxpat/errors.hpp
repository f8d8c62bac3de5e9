#pragma once

#include <stdexcept>
#include <string>

namespace proxpat {

/// Base class for all proxpat runtime errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric input was non-finite or outside the representable range.
class InvalidValue : public Error {
public:
    using Error::Error;
};

/// A probe function is undefined at the queried point.
class ProbeDomainError : public Error {
public:
    using Error::Error;
};

/// An operation that requires a non-empty region received an empty one.
class EmptyRegion : public Error {
public:
    using Error::Error;
};

/// Two regions from different descriptive spaces were combined.
class SpaceMismatch : public Error {
public:
    using Error::Error;
};

/// Feature vectors with incompatible shapes (arity or precisions) were combined.
class ProbeSetMismatch : public Error {
public:
    using Error::Error;
};

/// A groupoid operation was invoked with an operand outside the carrier.
class NotInCarrier : public Error {
public:
    using Error::Error;
};

/// A partial groupoid was applied to a pair outside its domain.
class UndefinedPair : public Error {
public:
    using Error::Error;
};

/// Classification was requested with an empty pattern list.
class NoPatterns : public Error {
public:
    using Error::Error;
};

/// A file could not be opened or read.
class IoError : public Error {
public:
    using Error::Error;
};

/// A file was readable but not in a supported format.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A tiling or run configuration is invalid for the given input.
class SpecError : public Error {
public:
    using Error::Error;
};

} // namespace proxpat
