#pragma once

#include <stdexcept>
#include <string>

namespace gls {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: out-of-range argument, malformed generator list, etc.
struct ValidationError : Error {
    explicit ValidationError(const std::string& field, const std::string& what)
        : Error(field + ": " + what), field(field) {}
    std::string field;
};

// Config file could not be parsed. Carries the position of the offending token.
struct ConfigError : Error {
    ConfigError(int line, int col, const std::string& what)
        : Error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what),
          line(line), col(col) {}
    int line;
    int col;
};

// An enumeration would exceed the configured cap.
struct CapError : Error {
    using Error::Error;
};

// A numeric routine could not meet its contract (box too small, smoothing too
// coarse, quadrature tail not captured).
struct NumericError : Error {
    using Error::Error;
};

} // namespace gls
