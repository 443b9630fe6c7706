#pragma once

#include <stdexcept>
#include <string>

namespace cfdim {

// Base of every error raised by the library. The CLI maps these to exit
// status 3; configuration problems are reported separately.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// A certified decision (floor, comparison, sign) stayed ambiguous through
// the whole precision schedule.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

// No integer lies strictly inside a digit window.
class EmptyWindow : public Error {
public:
    EmptyWindow(const std::string& what, long index) : Error(what), index_(index) {}
    long index() const noexcept { return index_; }

private:
    long index_;
};

// Root finder saw no sign change on its bracket.
class NoRoot : public Error {
public:
    using Error::Error;
};

// A point sits on a branch endpoint of an IFS at every available precision.
class AmbiguousBoundary : public Error {
public:
    using Error::Error;
};

// Request outside the families a result is known for.
class Unsupported : public Error {
public:
    using Error::Error;
};

} // namespace cfdim
