#pragma once

#include <stdexcept>
#include <string>

namespace quantacurve {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// A point is not where the caller claims it is (e.g. not on the stated side).
class GeometryError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class UnsupportedScenario : public Error {
public:
    using Error::Error;
};

// Raised by the asymptotic estimators when a sequence cannot be fitted.
class FitError : public Error {
public:
    using Error::Error;
};

} // namespace quantacurve
