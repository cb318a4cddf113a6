#pragma once

#include <stdexcept>
#include <string>

namespace nsurf {

/// Base class for all recoverable domain errors raised by this library.
/// The CLI maps these to exit code 1; parse/IO problems are reported
/// separately (exit code 2).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : DomainError {
    using DomainError::DomainError;
};

/// det = 0 where a nonzero determinant is required.
struct SingularMatrix : DomainError {
    using DomainError::DomainError;
};

/// An H-form failed validation (degenerate, asymmetric, parity link
/// broken, or no odd vector exists).
struct InvalidForm : DomainError {
    using DomainError::DomainError;
};

/// A transvection whose vectors violate the g-value conditions
/// (T_a needs g(a)=1 or a=0; S_{a,b} needs g(a)=g(b)=g(a+b)=0).
struct IllegalGenerator : DomainError {
    using DomainError::DomainError;
};

/// decompose() was handed a matrix outside O(E,g).
struct NotOrthogonal : DomainError {
    using DomainError::DomainError;
};

struct DimensionTooLarge : DomainError {
    using DomainError::DomainError;
};

struct DimensionTooSmall : DomainError {
    using DomainError::DomainError;
};

/// An S-letter's support leaves fewer than 3 free basis vectors, so no
/// T-only rewrite exists.
struct NoSupportRoom : DomainError {
    using DomainError::DomainError;
};

/// omega() needs the rational homology action and none was supplied.
struct MissingRationalAction : DomainError {
    using DomainError::DomainError;
};

/// Triple-point count incompatible with the Euler characteristic parity.
struct ParityViolation : DomainError {
    using DomainError::DomainError;
};

/// An enumeration guard (dimension / order / degree cap) was exceeded.
struct GuardViolation : DomainError {
    using DomainError::DomainError;
};

/// A symbol-function table does not cover every tuple it must.
struct MalformedFunction : DomainError {
    using DomainError::DomainError;
};

} // namespace nsurf
