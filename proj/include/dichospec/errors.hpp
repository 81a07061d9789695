#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dichospec {

// Malformed expression text. `offset` is the byte offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t offset)
        : std::runtime_error(std::move(message)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Evaluation outside a function's domain (ln of non-positive, division by zero).
class DomainError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Query outside the covered range of a cumulative integral.
class RangeError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical precondition violated (window ratios, parameter signs).
class PreconditionError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid configuration (bad key, bad value, unknown system name).
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Work limit exceeded (panel count cap).
class ResourceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dichospec
