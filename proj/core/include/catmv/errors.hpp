#pragma once

#include <stdexcept>
#include <string>

namespace catmv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied malformed or out-of-range input.
class InputError : public Error {
public:
    using Error::Error;
};

class NotInvertibleError : public Error {
public:
    using Error::Error;
};

/// A bounded search (primes, offsets, parameters) came up empty.
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Something the math guarantees did not hold. Always a bug.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// A catalytic register did not return to its initial contents.
class RestorationError : public Error {
public:
    using Error::Error;
};

/// Malformed instance or snapshot text, with the offending line.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string &what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace catmv
