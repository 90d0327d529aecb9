#pragma once

#include <stdexcept>
#include <string>

namespace gridslp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A dimension or area left the checked 62-bit range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Materializing a string would exceed the caller's cell budget.
class AreaLimitExceeded : public Error {
public:
    using Error::Error;
};

/// A query coordinate or substring range is outside the derived string.
class OutOfBounds : public Error {
public:
    using Error::Error;
};

/// A query reached an unfilled hole. Only possible with corrupted geometry.
class InternalHoleHit : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NotOneDimensional : public Error {
public:
    using Error::Error;
};

/// Grammar is structurally invalid (cycle, undefined symbol, wrong sort).
class InvalidGrammar : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace gridslp
