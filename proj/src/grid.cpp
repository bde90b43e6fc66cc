#include "bucklab/grid.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bucklab {

std::string polygon_signature(const ConvexPolygon& poly) {
    std::string sig;
    char buf[64];
    for (const auto& v : poly.vertices) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g;", v.x(), v.y());
        sig += buf;
    }
    return sig;
}

DiscreteDomain rasterize(const ConvexPolygon& poly, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("rasterize: h must be positive");
    const double w = min_width(poly);
    if (h > w / 8.0 * (1.0 + 1e-12))
        throw TooCoarse("rasterize: spacing exceeds min_width/8");

    DiscreteDomain dom;
    dom.polygon = poly;
    dom.h = h;
    dom.signature = polygon_signature(poly);

    Eigen::Vector2d lo = poly.vertices.front();
    Eigen::Vector2d hi = lo;
    for (const auto& v : poly.vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    dom.origin = lo;
    // floor with a relative nudge so exact multiples of h land on the lattice
    dom.nx = static_cast<int>(std::floor((hi.x() - lo.x()) / h + 1e-9)) + 1;
    dom.ny = static_cast<int>(std::floor((hi.y() - lo.y()) / h + 1e-9)) + 1;

    dom.interior_index.assign(static_cast<size_t>(dom.nx) * dom.ny, -1);
    const double needed = 0.5 * h * (1.0 - 1e-9);
    for (int j = 0; j < dom.ny; ++j) {
        for (int i = 0; i < dom.nx; ++i) {
            if (boundary_margin(poly, dom.position(i, j)) >= needed) {
                dom.interior_index[static_cast<size_t>(j) * dom.nx + i] = dom.n_unknowns++;
                dom.nodes.emplace_back(i, j);
            }
        }
    }
    if (dom.n_unknowns < 25)
        throw TooCoarse("rasterize: fewer than 25 interior nodes at this spacing");
    return dom;
}

}  // namespace bucklab
