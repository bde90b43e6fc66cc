#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bucklab/errors.hpp"
#include "bucklab/report.hpp"

namespace bucklab {

/// Convex polygon with counter-clockwise vertices, no duplicates, and no
/// collinear triples.  Build through make_convex_polygon, which enforces
/// these invariants; the fields are left public for test construction of
/// deliberately broken inputs.
struct ConvexPolygon {
    std::vector<Eigen::Vector2d> vertices;
};

struct GeometrySummary {
    double diameter = 0.0;
    double min_width = 0.0;
    double inradius = 0.0;
    double area = 0.0;
};

/// Dimensionless thinness (n-1) pi^2 / (D^2 lambda) of a convex body.
struct ThinnessTerm {
    double value = 0.0;
    int dimension = 2;
};

struct InradiusResult {
    double r = 0.0;
    Eigen::Vector2d center{0.0, 0.0};
};

/// Normalize and validate a vertex list: removes duplicate and collinear
/// vertices (tolerance 1e-12 x diameter), orients counter-clockwise, then
/// requires at least 3 vertices, nonzero area, and strict convexity.
/// Throws InvalidPolygon or NonConvexPolygon (with the reflex vertex index).
ConvexPolygon make_convex_polygon(std::vector<Eigen::Vector2d> points);

/// Support function: max over vertices of x . nu for unit nu.
/// Throws NotUnit when |nu| deviates from 1 beyond 1e-12.
double support(const ConvexPolygon& poly, const Eigen::Vector2d& nu);

/// Largest pairwise vertex distance.
double diameter(const ConvexPolygon& poly);

/// Smallest width over edge outward normals; for a polygon the minimum over
/// all directions is attained at an edge normal.  Throws DegenerateWidth when
/// the result is at numerical-noise scale (<= 1e-12 x diameter).
double min_width(const ConvexPolygon& poly);

/// Chebyshev center: the largest inscribed circle, found as the linear
/// program max r subject to nu_i . c + r <= b_i over all edges.
InradiusResult inradius(const ConvexPolygon& poly);

double polygon_area(const ConvexPolygon& poly);

/// Signed distance from p to the nearest edge line; positive inside (for a
/// convex polygon this is the distance to the boundary), negative outside.
double boundary_margin(const ConvexPolygon& poly, const Eigen::Vector2d& p);

GeometrySummary summarize(const ConvexPolygon& poly);

ThinnessTerm thinness(double diameter, double lambda, int dimension);

/// Checks the explicit one-sided width bound pi^2 <= w(poly)^2 * lambda.
InequalityReport width_lambda_sandwich(const ConvexPolygon& poly, double lambda);

}  // namespace bucklab
