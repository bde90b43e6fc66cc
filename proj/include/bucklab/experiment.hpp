#pragma once

#include <vector>

#include "bucklab/eigensolve.hpp"

namespace bucklab {

/// Grid policy for the elongating-rectangle runs: a level ladder starting at
/// min_width / base_divisor and halving per level.
struct HPolicy {
    int base_divisor = 16;
    int levels = 3;
};

/// One elongating-rectangle data point (1 x aspect, extrapolated values).
struct AspectRatioRow {
    int aspect = 0;
    double lambda = 0.0;
    double Lambda = 0.0;
    double ratio = 0.0;  ///< Lambda / lambda
    double lambda_error = 0.0;
    double Lambda_error = 0.0;
};

/// Ratio sequence of the elongation experiment plus diagnostics against the
/// strip value sigma.  The trend flags describe the data; they are reported,
/// not asserted.
struct StripLimitResult {
    std::vector<AspectRatioRow> rows;
    double sigma = 0.0;
    bool final_below_4 = false;
    bool final_within_sigma_window = false;  ///< |final ratio - sigma| <= 0.1
    bool non_increasing_within_tol = false;  ///< consecutive rises stay <= 0.02
};

/// Solve both eigenvalues on 1 x k rectangles for every aspect in the list
/// (all >= 1, strictly increasing) and compare the ratio sequence with the
/// strip minimum.  Solver errors propagate.
StripLimitResult strip_limit_experiment(const std::vector<int>& aspects,
                                        const HPolicy& policy = {});

/// Rayleigh quotient of the separated test mode h(y) cos(sqrt(mu) x) phi(x)
/// on the truncated strip (-kL, kL) x (0, pi), L = pi/sqrt(mu), where phi is
/// an even quintic-smoothstep cutoff that ramps to zero over the outermost
/// period.  Decreases toward the strip eigenvalue as k grows.
double cutoff_quotient(int k, double mu);

}  // namespace bucklab
