#pragma once

#include <stdexcept>
#include <string>

namespace anglespace {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed arguments or inputs: unknown labels, out-of-range values,
/// duplicate or missing entries.  The caller violated a precondition.
struct PreconditionError : Error {
    using Error::Error;
};

/// Document syntax or schema problems.
struct ParseError : Error {
    using Error::Error;
};

/// A semantic verdict, not a usage problem: the data is well formed but
/// fails a mathematical requirement of the requested operation.
struct VerdictError : Error {
    using Error::Error;
};

/// The space has only collinear triples; it carries no length scale, so
/// every reconstruction question has infinitely many answers.
struct TrivialSpaceError : VerdictError {
    using VerdictError::VerdictError;
};

/// A sine needed on an evaluation path is below the degeneracy floor, or a
/// configuration required to be non-collinear is collinear.
struct DegenerateGeometryError : VerdictError {
    using VerdictError::VerdictError;
};

} // namespace anglespace
