#pragma once

#include <string>
#include <vector>

#include "bucklab/geometry.hpp"

namespace bucklab {

/// Uniform inner lattice over a convex polygon.  Lattice node (i, j) sits at
/// origin + h·(i, j); a node becomes an unknown iff its distance to the
/// boundary is at least h/2, so the discrete domain is a subset of the
/// polygon.  Unknowns are numbered row-major (j outer, i inner).
struct DiscreteDomain {
    ConvexPolygon polygon;
    double h = 0.0;
    int nx = 0;
    int ny = 0;
    Eigen::Vector2d origin{0.0, 0.0};
    std::vector<int> interior_index;      ///< nx·ny entries, -1 for non-interior
    std::vector<Eigen::Vector2i> nodes;   ///< unknown -> lattice coordinates
    int n_unknowns = 0;
    std::string signature;                ///< polygon identity, for cross-result checks

    /// Unknown index at lattice coordinates, -1 outside the lattice or the
    /// interior set.
    int index(int i, int j) const {
        if (i < 0 || i >= nx || j < 0 || j >= ny) return -1;
        return interior_index[static_cast<size_t>(j) * nx + i];
    }

    Eigen::Vector2d position(int i, int j) const { return origin + h * Eigen::Vector2d(i, j); }
};

/// Identity string for a vertex list, used to detect results computed on
/// different polygons.
std::string polygon_signature(const ConvexPolygon& poly);

/// Build the inner lattice at spacing h.  Requires h ≤ min_width/8 and at
/// least 25 interior nodes; both failures throw TooCoarse.
DiscreteDomain rasterize(const ConvexPolygon& poly, double h);

}  // namespace bucklab
