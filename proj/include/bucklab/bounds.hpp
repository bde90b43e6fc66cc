#pragma once

#include "bucklab/errors.hpp"

namespace bucklab {

/// The two explicit buckling-to-membrane ratio bounds at a given thinness,
/// and whichever of them is binding.
struct BoundCurvePoint {
    double T = 0.0;
    double improved_bound = 0.0;  ///< 4 - 2T
    double thin_bound = 0.0;
    double effective = 0.0;       ///< min of the two
};

/// Intersection of the two bound curves: the thinness where they meet and
/// the common bound value there (the best dimension-wide constant).
struct CrossingPoint {
    double T_star = 0.0;
    double value = 0.0;  ///< 4 - 2 T_star
};

/// Result of minimizing the directional-estimate bound over its free
/// oscillation parameter.
struct MinimizedBound {
    double alpha = 0.0;
    double value = 0.0;
};

/// Ratio bound (8/3)sqrt(2) (1 + 2^{5/6} (n-1)^{-1/3} T^{1/3})^3 that becomes
/// sharp as the thinness T tends to zero.  Increasing in T, decreasing in n.
double thin_bound(double T, int n);

/// Evaluate both bounds and their minimum at thinness T in dimension n.
BoundCurvePoint bound_curve_point(double T, int n);

/// Buckling bound (8/3)sqrt(2) (lambda_A + sqrt(2) pi^2 / l^2) for a cylinder
/// of length l over a cross-section with membrane eigenvalue lambda_A.
double cylinder_bound(double lambda_A, double l);

/// Solve 4 - 2T = thin_bound(T, n) for T in (1e-12, 0.5) by bisection to
/// width tol.  Throws NoCrossing if the bracket does not straddle a root.
CrossingPoint crossing_point(int n, double tol = 1e-12);

/// Directional oscillation bound
///   lambda ((16 - 8T + 8a + 3a^2) + 48 a g) / (4 + 3a),  a = alpha,
/// where g = gradient_fraction is the share of the quartic energy carried by
/// the gradient component along the oscillation direction (in [0, 1],
/// supplied by the caller).  Requires alpha > 0.
double estimatenu_bound(double lambda, double T, double alpha, double gradient_fraction);

/// Minimize estimatenu_bound over alpha in (0, 8] by golden section.
MinimizedBound estimatenu_minimum(double lambda, double T, double gradient_fraction);

}  // namespace bucklab
