#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edgeidle {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that violates a documented range or schema. CLI exit code 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed text at a known position in an input stream.
class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Frame indices that go backwards (or repeat where they must not).
class OrderingError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class SchemaVersionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Fewer samples than a window statistic needs.
class InsufficientWindowError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DuplicateObservationError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Training data that cannot define a binary classifier.
class DegenerateTrainingError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EmptyEvaluationError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Filesystem or stream failure. CLI exit code 2.
class IoError : public Error {
public:
    using Error::Error;
};

/// An internal invariant did not hold. CLI exit code 3.
class InvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace edgeidle
