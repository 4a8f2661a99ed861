#pragma once

#include <stdexcept>
#include <string>

namespace phid {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (bad CSV row, duplicate points, ...).
class InputError : public Error {
public:
    using Error::Error;
};

// A simplex whose points are affinely dependent where independence is required.
class DegenerateSimplex : public Error {
public:
    using Error::Error;
};

// The request is outside the regime the algorithms support (n < d+1, flat
// configuration, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class ComplexTooLarge : public Error {
public:
    using Error::Error;
};

// Precondition of a verification routine is not met; no verdict.
class NotApplicable : public Error {
public:
    using Error::Error;
};

class HypothesisViolated : public Error {
public:
    using Error::Error;
};

class AngleViolation : public Error {
public:
    using Error::Error;
};

} // namespace phid
