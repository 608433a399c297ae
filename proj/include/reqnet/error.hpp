#pragma once

#include <stdexcept>
#include <string>

namespace reqnet {

/// Base for every error the toolkit raises on purpose. The CLI maps the
/// concrete subclass onto a process exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad flags or arguments (exit code 1).
class UsageError : public Error {
public:
    using Error::Error;
};

/// Unreadable input, missing required columns, malformed files (exit code 2).
class InputError : public Error {
public:
    using Error::Error;
};

/// Stage outputs that disagree with each other (exit code 3).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// A precondition of a numeric routine was violated.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Sample has no spread; the statistic is undefined.
class DegenerateSampleError : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace reqnet
