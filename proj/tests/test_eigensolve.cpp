#include <cmath>
#include <numbers>
#include <vector>

#include "bucklab/eigensolve.hpp"
#include "bucklab/errors.hpp"
#include "doctest.h"

namespace {

constexpr double kPi = std::numbers::pi;

bucklab::ConvexPolygon rectangle(double w, double l) {
    return bucklab::make_convex_polygon({{0, 0}, {w, 0}, {w, l}, {0, l}});
}

bucklab::ConvexPolygon slanted_hull() {
    return bucklab::make_convex_polygon(
        {{0, 0}, {0.9, -0.2}, {1.5, 0.3}, {1.6, 1.0}, {0.9, 1.5}, {0.1, 1.1}});
}

bucklab::SparseMat sparse_diagonal(const std::vector<double>& d) {
    bucklab::SparseMat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < static_cast<int>(d.size()); ++i) m.insert(i, i) = d[i];
    m.makeCompressed();
    return m;
}

}  // namespace

TEST_SUITE("eigensolve") {
    TEST_CASE("diagonal matrix sanity") {
        const auto res = bucklab::smallest_eigen_sparse(sparse_diagonal({3, 1, 5, 2}));
        CHECK(res.value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(res.vector[1]) == doctest::Approx(res.vector.norm()).epsilon(1e-8));
    }

    TEST_CASE("membrane frequency of the unit square") {
        const auto study = bucklab::study_polygon(rectangle(1, 1), bucklab::EigenKind::dirichlet,
                                                  {1.0 / 16, 1.0 / 32, 1.0 / 64});
        CHECK(study.value() == doctest::Approx(2 * kPi * kPi).epsilon(5e-4));
        CHECK(study.study.observed_order > 1.7);
        CHECK(study.study.observed_order < 2.3);
        CHECK_FALSE(study.study.order_suspect);
        // the 5-point eigenvalues approach the limit from below
        CHECK(study.study.levels[0].second < study.study.levels[1].second);
        CHECK(study.study.levels[1].second < study.study.levels[2].second);
        CHECK(study.finest.residual_norm <= 1e-10);
        CHECK(study.finest.h == doctest::Approx(1.0 / 64));
        CHECK(study.error_estimate < 0.05);

        // ground state is single-signed and oriented positive
        const double top = study.finest.vector.maxCoeff();
        CHECK(top > 0.0);
        CHECK(study.finest.vector.minCoeff() >= -1e-8 * top);

        // discrete L² normalization: sum of squares times cell area is one
        const double cell = study.finest.h * study.finest.h;
        CHECK(cell * study.finest.vector.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    }

    TEST_CASE("membrane frequencies of rectangles") {
        const auto tall = bucklab::study_polygon(rectangle(1, 2), bucklab::EigenKind::dirichlet,
                                                 {1.0 / 16, 1.0 / 32, 1.0 / 64});
        CHECK(tall.value() == doctest::Approx(kPi * kPi * 1.25).epsilon(1e-3));

        const auto dom = bucklab::rasterize(rectangle(2, 3), 1.0 / 32);
        const auto raw = bucklab::dirichlet_lambda(dom);
        CHECK(raw.value == doctest::Approx(kPi * kPi * (0.25 + 1.0 / 9.0)).epsilon(5e-3));
    }

    TEST_CASE("frequency respects the width lower bound on irregular shapes") {
        for (const auto& poly :
             {bucklab::make_convex_polygon({{0, 0}, {1, 0}, {0.5, 0.9}}), slanted_hull()}) {
            const double w = bucklab::min_width(poly);
            const auto dom = bucklab::rasterize(poly, w / 24.0);
            const auto res = bucklab::dirichlet_lambda(dom);
            CHECK(res.value >= 0.95 * kPi * kPi / (w * w));
        }
    }

    TEST_CASE("buckling load of the unit square") {
        const auto lam = bucklab::study_polygon(rectangle(1, 1), bucklab::EigenKind::dirichlet,
                                                {1.0 / 16, 1.0 / 32, 1.0 / 64});
        const auto buck = bucklab::study_polygon(rectangle(1, 1), bucklab::EigenKind::buckling,
                                                 {1.0 / 16, 1.0 / 32, 1.0 / 64});
        CHECK(buck.value() == doctest::Approx(52.344428).epsilon(1e-5));
        CHECK(buck.value() > lam.value());          // buckling dominates the frequency
        CHECK(buck.value() < 4.0 * lam.value());    // and sits below four times it
        CHECK_FALSE(buck.study.order_suspect);
        CHECK(buck.finest.residual_norm <= 1e-10);
        CHECK(buck.signature == lam.signature);
    }

    TEST_CASE("clamped interval anchor") {
        const auto res = bucklab::interval_buckling(256, kPi);
        CHECK(res.value == doctest::Approx(4.0).epsilon(5e-3));
        CHECK(res.h == doctest::Approx(kPi / 256));
        REQUIRE(res.vector.size() == 255);

        Eigen::VectorXd profile(255);
        for (int i = 1; i < 256; ++i) profile[i - 1] = 0.5 * (1.0 - std::cos(2.0 * i * res.h));
        const double corr =
            res.vector.dot(profile) / (res.vector.norm() * profile.norm());
        CHECK(std::abs(corr) > 0.999);
    }

    TEST_CASE("shrinking the domain raises both eigenvalues") {
        const double h = 1.0 / 16;
        const auto small_dom = bucklab::rasterize(rectangle(1, 1), h);
        const auto large_dom = bucklab::rasterize(rectangle(1, 2), h);

        const double lam_small = bucklab::dirichlet_lambda(small_dom).value;
        const double lam_large = bucklab::dirichlet_lambda(large_dom).value;
        CHECK(lam_small >= lam_large * (1.0 - 1e-9));

        const double buck_small = bucklab::buckling_lambda(small_dom).value;
        const double buck_large = bucklab::buckling_lambda(large_dom).value;
        CHECK(buck_small >= buck_large * (1.0 - 0.01));
    }

    TEST_CASE("eigenvalues scale as the inverse squared diameter") {
        const auto base = slanted_hull();
        const double h0 = bucklab::min_width(base) / 16.0;
        std::vector<Eigen::Vector2d> doubled;
        for (const auto& v : base.vertices) doubled.push_back(2.0 * v);

        const auto dom0 = bucklab::rasterize(base, h0);
        const auto dom2 = bucklab::rasterize(bucklab::make_convex_polygon(doubled), 2.0 * h0);
        REQUIRE(dom0.n_unknowns == dom2.n_unknowns);

        CHECK(bucklab::dirichlet_lambda(dom2).value ==
              doctest::Approx(bucklab::dirichlet_lambda(dom0).value / 4.0).epsilon(1e-7));
        CHECK(bucklab::buckling_lambda(dom2).value ==
              doctest::Approx(bucklab::buckling_lambda(dom0).value / 4.0).epsilon(1e-7));
    }

    TEST_CASE("gradient quotient of the computed mode matches its eigenvalue") {
        // one-sided stencils at the rim make the quotient first-order accurate,
        // so expect a modest gap that halves with the spacing
        double previous_gap = 0.0;
        for (const double h : {1.0 / 32, 1.0 / 64}) {
            const auto dom = bucklab::rasterize(rectangle(1, 1), h);
            const auto res = bucklab::dirichlet_lambda(dom);
            const Eigen::MatrixX2d g = bucklab::discrete_gradient(dom, res.vector);
            const double quotient = g.squaredNorm() / res.vector.squaredNorm();
            const double gap = std::abs(quotient - res.value) / res.value;
            CHECK(gap < 0.10);
            if (previous_gap > 0.0) CHECK(gap < 0.6 * previous_gap);
            previous_gap = gap;
        }
    }

    TEST_CASE("iteration budget is enforced") {
        const auto dom = bucklab::rasterize(rectangle(1, 1), 1.0 / 16);
        bucklab::SolveOptions opts;
        opts.tol = 1e-30;
        opts.max_iterations = 8;
        CHECK_THROWS_AS(bucklab::dirichlet_lambda(dom, opts), bucklab::NoConvergence);
    }

    TEST_CASE("indefinite operators are rejected") {
        const auto neg = sparse_diagonal({-1, -1, -1, -1});
        const auto pos = sparse_diagonal({1, 1, 1, 1});
        CHECK_THROWS_AS(bucklab::smallest_eigen_sparse(neg), bucklab::IndefinitePencil);
        CHECK_THROWS_AS(bucklab::smallest_pencil_sparse(pos, neg), bucklab::IndefinitePencil);
    }

    TEST_CASE("refinement ladder validation") {
        const auto sq = rectangle(1, 1);
        const auto kind = bucklab::EigenKind::dirichlet;
        CHECK_THROWS_AS(bucklab::refine_study(sq, kind, {1.0 / 16, 1.0 / 32}),
                        std::invalid_argument);
        CHECK_THROWS_AS(bucklab::refine_study(sq, kind, {1.0 / 32, 1.0 / 16, 1.0 / 8}),
                        std::invalid_argument);
        CHECK_THROWS_AS(bucklab::refine_study(sq, kind, {1.0 / 16, 1.0 / 32, 1.0 / 48}),
                        std::invalid_argument);

        const auto ladder = bucklab::level_ladder(sq, 16, 3);
        REQUIRE(ladder.size() == 3);
        CHECK(ladder[0] == doctest::Approx(1.0 / 16));
        CHECK(ladder[2] == doctest::Approx(1.0 / 64));
    }

    TEST_CASE("buckling needs a finer grid than rasterization alone") {
        const auto dom = bucklab::rasterize(rectangle(1, 1), 1.0 / 12);
        CHECK_THROWS_AS(bucklab::buckling_lambda(dom), bucklab::TooCoarse);
    }
}
