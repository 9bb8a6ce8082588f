#pragma once

#include <stdexcept>
#include <string>

namespace k3gauss {

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A construction invariant was violated (bad Gram matrix, bad family parameters, ...).
// The message names the violated invariant.
class ConstraintError : public Error {
public:
    using Error::Error;
};

// Vector length does not match lattice rank.
class DimensionError : public Error {
public:
    using Error::Error;
};

// An operation precondition does not hold (wrong sign of a square, missing
// verified ample reference, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A state the underlying theory rules out was reached; indicates an input that
// violated an earlier assumption rather than a bug in the caller.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

// An enumeration exceeded its node budget.
class WorkLimitError : public Error {
public:
    using Error::Error;
};

// Structured-text input could not be parsed; message carries line/field info.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace k3gauss
