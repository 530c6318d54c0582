#ifndef TRANROOTS_ERRORS_HPP
#define TRANROOTS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tranroots {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands live in different coefficient domains (exact integer vs complex float).
class DomainMismatch : public Error {
public:
    using Error::Error;
};

class InvalidExponent : public Error {
public:
    using Error::Error;
};

// A polynomial of the wrong shape was supplied (zero, constant, ...).
class DegeneratePolynomial : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// (ell, k) share a factor; callers should go through reduce_spec first.
class NotCoprime : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, const std::string& message)
        : Error("syntax error at offset " + std::to_string(offset) + ": " + message),
          offset_(offset), detail_(message) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t offset_;
    std::string detail_;
};

// Expansion of a parsed expression would exceed the degree guard.
class ExpansionLimit : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace tranroots

#endif  // TRANROOTS_ERRORS_HPP
