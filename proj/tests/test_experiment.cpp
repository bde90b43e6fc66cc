#include <cmath>

#include "bucklab/experiment.hpp"
#include "bucklab/strip.hpp"
#include "doctest.h"

TEST_SUITE("experiment") {
    TEST_CASE("elongation drives the ratio toward the strip value") {
        const auto result = bucklab::strip_limit_experiment({1, 2});
        REQUIRE(result.rows.size() == 2);
        CHECK(result.rows[0].aspect == 1);
        CHECK(std::abs(result.rows[0].ratio - 2.65162) < 0.02);
        CHECK(std::abs(result.rows[1].ratio - 3.13868) < 0.02);
        CHECK(result.sigma == doctest::Approx(3.757067831454491).epsilon(1e-6));

        CHECK(result.final_below_4);
        // k=2 is far from the limit, and the ratios rise toward it
        CHECK_FALSE(result.final_within_sigma_window);
        CHECK_FALSE(result.non_increasing_within_tol);

        for (const auto& row : result.rows) {
            CHECK(row.ratio == doctest::Approx(row.Lambda / row.lambda));
            CHECK(row.lambda_error < 0.01 * row.lambda);
            CHECK(row.Lambda_error < 0.01 * row.Lambda);
        }
    }

    TEST_CASE("aspect list validation") {
        CHECK_THROWS_AS(bucklab::strip_limit_experiment({}), std::invalid_argument);
        CHECK_THROWS_AS(bucklab::strip_limit_experiment({0, 2}), std::invalid_argument);
        CHECK_THROWS_AS(bucklab::strip_limit_experiment({2, 2}), std::invalid_argument);
        CHECK_THROWS_AS(bucklab::strip_limit_experiment({4, 2}), std::invalid_argument);
        // too few refinement levels is caught by the study machinery
        CHECK_THROWS_AS(bucklab::strip_limit_experiment({1}, {16, 2}), std::invalid_argument);
    }

    TEST_CASE("truncated oscillating mode bounds the strip value from above") {
        const auto minimum = bucklab::minimize_sigma();
        const double at8 = bucklab::cutoff_quotient(8, minimum.mu_star);
        CHECK(at8 == doctest::Approx(3.775914).epsilon(3e-4));
        CHECK(at8 > minimum.sigma - 0.01);
        CHECK(at8 < minimum.sigma + 0.5);

        // widening the plateau tightens the bound
        const double at2 = bucklab::cutoff_quotient(2, minimum.mu_star);
        const double at4 = bucklab::cutoff_quotient(4, minimum.mu_star);
        CHECK(at2 > at4);
        CHECK(at4 > at8);

        CHECK_THROWS_AS(bucklab::cutoff_quotient(0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(bucklab::cutoff_quotient(1, -1.0), std::invalid_argument);
    }
}
