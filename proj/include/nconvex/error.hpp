#pragma once

#include <stdexcept>
#include <string>

namespace nconvex {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: degenerate intervals, duplicate nodes, bad supports.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Interpolation data whose total multiplicity does not match the degree.
class ArityMismatch : public Error {
public:
    using Error::Error;
};

/// Two measures or functions that live on different intervals or orders.
class DomainMismatch : public Error {
public:
    using Error::Error;
};

/// Evaluation point outside the open domain.
class OutOfDomain : public Error {
public:
    using Error::Error;
};

/// Requested quantity is not available pointwise (e.g. f^(n+1)).
class Unsupported : public Error {
public:
    using Error::Error;
};

/// Singular parts overlap without aligned supports, so the answer is unknown.
class Undecidable : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its precondition (e.g. f not above g).
class PreconditionFailure : public Error {
public:
    using Error::Error;
};

/// Two independent routes disagreed. Always a bug or a numerical breakdown.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace nconvex
