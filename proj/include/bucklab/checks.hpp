#pragma once

#include "bucklab/eigensolve.hpp"
#include "bucklab/geometry.hpp"
#include "bucklab/report.hpp"

namespace bucklab {

/// Classical ratio bound Lambda <= 4 lambda.  Both studies must come from
/// the same polygon; the tolerance is three times the combined Richardson
/// error estimates of the two sides.
InequalityReport check_payne(const StudiedValue& lambda, const StudiedValue& Lambda);

/// Sharpened ratio bound Lambda <= (4 - 2T) lambda with T the thinness term
/// of the same polygon.
InequalityReport check_improved(const StudiedValue& lambda, const StudiedValue& Lambda,
                                const ThinnessTerm& T);

/// Discrete residual of the identity lambda ∫u⁴ = 3 ∫u²|∇u|² satisfied by
/// the membrane ground state.  Reports the relative deviation against zero.
InequalityReport check_u_squared_identity(const DiscreteDomain& dom, const EigenResult& u,
                                          double tolerance = 0.02);

/// Buckling Rayleigh quotient of the squared eigenvector: (v, Bv)/(v, Av)
/// with v = u².  Sits above the computed buckling load by the variational
/// principle and below (4 - 2T) lambda in the continuum limit.
double rayleigh_u_squared(const DiscreteDomain& dom, const Eigen::VectorXd& u, double lambda);

/// Oscillation-refined quotient at wave number mu along direction nu,
/// evaluated with v = u²:
///   mu + ((v,Bv) + mu (v,Av))/((v,Av) + mu (v,v)) + 4 mu Q_nu/((v,Av) + mu (v,v))
/// where Q_nu sums the squared gradient component of v along nu.  Tends to
/// rayleigh_u_squared as mu -> 0 and stays above the buckling load.
double oscillating_bound(const DiscreteDomain& dom, const Eigen::VectorXd& u, double lambda,
                         double mu, const Eigen::Vector2d& nu);

/// Both ends of the squared-eigenvector chain packaged as reports: the
/// quotient dominates the computed buckling load and is itself dominated by
/// the sharpened bound (up to solver tolerances).
struct RayleighChain {
    double quotient = 0.0;
    InequalityReport above_buckling;
    InequalityReport below_improved;
};

RayleighChain rayleigh_chain(const StudiedValue& lambda, const StudiedValue& Lambda,
                             const ThinnessTerm& T);

/// Pointwise concavity of log u: at every qualifying interior node the
/// smallest eigenvalue of -Hess(log u) must reach pi²/D² (up to tolerance).
/// Nodes qualify when they clear the boundary by max(3h, 0.3 inradius) and
/// have a full 9-point neighborhood of unknowns.  Throws NonPositiveU if a
/// needed value is not positive, TooCoarse if no node qualifies.
InequalityReport log_concavity_check(const DiscreteDomain& dom, const Eigen::VectorXd& u,
                                     double diameter, double tolerance = 1e-9);

/// Pointwise level-line curvature bound H_u >= (pi²/D²) u/|∇u| at qualifying
/// nodes, skipping near-critical points (|∇u| below 1e-6 of its maximum).
/// Reports the worst deficit against zero; never throws on sign failures.
InequalityReport check_curvature_bound(const DiscreteDomain& dom, const Eigen::VectorXd& u,
                                       double diameter, double tolerance = 1e-6);

}  // namespace bucklab
