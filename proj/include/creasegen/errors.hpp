#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace creasegen {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Requested region lies entirely outside the source raster.
class OutOfBoundsError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Random sampling could not satisfy its constraints.
class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration (empty background pool, inconsistent bounds, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem or codec failure. The message names the offending path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input that violates a structural constraint (dimension mismatch).
class SchemaError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Requested more distinct items than exist.
class CapacityError : public std::runtime_error {
public:
    CapacityError(const std::string& what, std::size_t maximum)
        : std::runtime_error(what), maximum_(maximum) {}

    std::size_t maximum() const noexcept { return maximum_; }

private:
    std::size_t maximum_;
};

/// Input does not satisfy an evaluation protocol's preconditions.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace creasegen
