#include <algorithm>
#include <cmath>

#include "bucklab/grid.hpp"
#include "doctest.h"

namespace {

bucklab::ConvexPolygon square() {
    return bucklab::make_convex_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

bucklab::ConvexPolygon rect_1x2() {
    return bucklab::make_convex_polygon({{0, 0}, {1, 0}, {1, 2}, {0, 2}});
}

}  // namespace

TEST_SUITE("grid") {
    TEST_CASE("node counts on reference rectangles") {
        CHECK(bucklab::rasterize(square(), 1.0 / 8.0).n_unknowns == 49);
        CHECK(bucklab::rasterize(rect_1x2(), 1.0 / 8.0).n_unknowns == 105);
        CHECK(bucklab::rasterize(square(), 1.0 / 16.0).n_unknowns == 225);
    }

    TEST_CASE("coarse spacings are rejected") {
        CHECK_THROWS_AS(bucklab::rasterize(square(), 0.5), bucklab::TooCoarse);
        // permitted by the node count but beyond the min_width/8 rule
        CHECK_THROWS_AS(
            bucklab::rasterize(bucklab::make_convex_polygon({{0, 0}, {9, 0}, {9, 1}, {0, 1}}),
                               0.25),
            bucklab::TooCoarse);
        CHECK_THROWS_AS(bucklab::rasterize(square(), 0.0), std::invalid_argument);
        CHECK_THROWS_AS(bucklab::rasterize(square(), -1.0), std::invalid_argument);
    }

    TEST_CASE("index map is a row-major bijection") {
        const auto dom = bucklab::rasterize(square(), 1.0 / 8.0);
        for (int a = 0; a < dom.n_unknowns; ++a)
            CHECK(dom.index(dom.nodes[a].x(), dom.nodes[a].y()) == a);
        int count = 0;
        for (int v : dom.interior_index)
            if (v >= 0) ++count;
        CHECK(count == dom.n_unknowns);
        for (int a = 1; a < dom.n_unknowns; ++a) {
            const auto& p = dom.nodes[a - 1];
            const auto& q = dom.nodes[a];
            CHECK((q.y() > p.y() || (q.y() == p.y() && q.x() > p.x())));
        }
    }

    TEST_CASE("every unknown keeps the half-spacing margin") {
        for (const auto& poly :
             {square(), rect_1x2(),
              bucklab::make_convex_polygon({{0, 0}, {1, 0}, {0.5, 0.9}}),
              bucklab::make_convex_polygon(
                  {{0, 0}, {0.9, -0.2}, {1.5, 0.3}, {1.6, 1.0}, {0.9, 1.5}, {0.1, 1.1}})}) {
            const double h = bucklab::min_width(poly) / 16.0;
            const auto dom = bucklab::rasterize(poly, h);
            CHECK(dom.n_unknowns >= 25);
            for (const auto& ij : dom.nodes) {
                const double margin =
                    bucklab::boundary_margin(poly, dom.position(ij.x(), ij.y()));
                CHECK(margin >= 0.5 * h * (1 - 1e-9));
            }
        }
    }

    TEST_CASE("out-of-lattice queries return no index") {
        const auto dom = bucklab::rasterize(square(), 1.0 / 8.0);
        CHECK(dom.index(-1, 0) == -1);
        CHECK(dom.index(0, -1) == -1);
        CHECK(dom.index(dom.nx, 0) == -1);
        CHECK(dom.index(0, dom.ny) == -1);
        CHECK(dom.index(0, 0) == -1);  // corner node sits on the boundary
    }

    TEST_CASE("signature identifies the polygon, not the spacing") {
        const auto d1 = bucklab::rasterize(square(), 1.0 / 8.0);
        const auto d2 = bucklab::rasterize(square(), 1.0 / 16.0);
        CHECK(d1.signature == d2.signature);
        const auto scaled = bucklab::make_convex_polygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
        CHECK(bucklab::rasterize(scaled, 1.0 / 8.0).signature != d1.signature);
    }
}
