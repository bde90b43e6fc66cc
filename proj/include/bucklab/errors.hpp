#pragma once

#include <stdexcept>
#include <string>

namespace bucklab {

/// Base class for every error this library throws on purpose.
/// Precondition violations (caller bugs) throw std::invalid_argument instead.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- strip mode -------------------------------------------------------------

/// Root scan reached the analytic upper bound without a sign change
/// (scan step too coarse, or no admissible root).
struct NoRootInBracket : Error {
    using Error::Error;
};

/// A denominator in a closed-form eigenfunction is below machine scale.
struct DegenerateNormalization : Error {
    using Error::Error;
};

/// The denominator form of a generalized eigenproblem is not positive
/// definite; indicates an assembly bug.
struct SingularPencil : Error {
    using Error::Error;
};

// ---- convex geometry --------------------------------------------------------

/// Direction vector is not unit length within tolerance.
struct NotUnit : Error {
    using Error::Error;
};

/// Minimal width is at numerical-noise scale relative to the diameter.
struct DegenerateWidth : Error {
    using Error::Error;
};

/// Vertex list does not describe a valid convex polygon.
struct InvalidPolygon : Error {
    using Error::Error;
};

/// Polygon has a reflex vertex; index refers to the cleaned vertex list.
struct NonConvexPolygon : InvalidPolygon {
    NonConvexPolygon(std::string msg, int vertex)
        : InvalidPolygon(std::move(msg)), vertex_index(vertex) {}
    int vertex_index;
};

// ---- discretization and solves ----------------------------------------------

/// Grid too coarse to carry a meaningful eigenvalue problem.
struct TooCoarse : Error {
    using Error::Error;
};

/// Iteration budget exhausted before the eigenpair met tolerance.
struct NoConvergence : Error {
    using Error::Error;
};

/// Factorization of the pencil found a nonpositive pivot pattern
/// inconsistent with SPD assembly; assembly bug guard.
struct IndefinitePencil : Error {
    using Error::Error;
};

/// A pointwise check met u <= 0 at a node that qualifies for evaluation.
struct NonPositiveU : Error {
    using Error::Error;
};

// ---- inequality checks ------------------------------------------------------

/// Two eigenvalue results fed to one check come from different polygons.
struct MismatchedDomain : Error {
    using Error::Error;
};

/// Bisection bracket endpoints do not straddle a sign change.
struct NoCrossing : Error {
    using Error::Error;
};

// ---- input ------------------------------------------------------------------

/// Polygon file failed to parse; line is 1-based.
struct ParseError : Error {
    ParseError(std::string msg, int line_no) : Error(std::move(msg)), line(line_no) {}
    int line;
};

}  // namespace bucklab
