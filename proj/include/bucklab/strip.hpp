#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bucklab/errors.hpp"

namespace bucklab {

/// Default scan and tolerance parameters for the strip dispersion solver.
inline constexpr double kStripScanStart = 1e-3;
inline constexpr double kStripScanStep = 1e-2;
inline constexpr double kStripRootTol = 1e-12;
inline constexpr double kStripCoshRescaleArg = 700.0;

enum class StripModeKind { axial, mixed };

/// Smallest buckling eigenvalue of the infinite strip at wave number mu,
/// together with the root-finding evidence.
struct StripModeResult {
    double mu = 0.0;
    double lambda_mu = 0.0;
    /// Normalized dispersion residual evaluated at lambda_mu.
    double residual_at_root = 0.0;
    /// Sign-change interval the root was isolated in; contains lambda_mu.
    std::array<double, 2> bracket{0.0, 0.0};
};

/// Parameters of a closed-form strip cross-section profile.
struct StripEigenfunction {
    double mu = 0.0;
    double lambda = 0.0;
    StripModeKind kind = StripModeKind::axial;
};

struct StripMinimum {
    double mu_star = 0.0;
    double sigma = 0.0;
    /// False when the preliminary grid scan saw more than one local minimum,
    /// in which case golden-section refined the deepest one.
    bool unimodal_pre_scan = true;
};

/// Dispersion residual of the axial strip mode at Lambda > 0.  Roots are the
/// eigenvalues whose cross-section profile does not oscillate along the strip.
template <typename Scalar>
Scalar residual_axial(Scalar Lambda) {
    if (!(Lambda > Scalar(0))) throw std::invalid_argument("residual_axial: Lambda must be positive");
    using std::cos;
    using std::sin;
    using std::sqrt;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar theta = sqrt(Lambda) * pi;
    return Scalar(2) * (cos(theta) - Scalar(1)) + theta * sin(theta);
}

/// Dispersion residual of the oscillating strip mode at wave number mu > 0
/// and Lambda >= mu.  When sqrt(mu)*pi exceeds kStripCoshRescaleArg the
/// result is scaled by exp(-sqrt(mu)*pi) to stay representable; the root set
/// and sign pattern are unchanged.
template <typename Scalar>
Scalar residual_mixed(Scalar mu, Scalar Lambda) {
    if (!(mu > Scalar(0))) throw std::invalid_argument("residual_mixed: mu must be positive");
    if (!(Lambda >= mu)) throw std::invalid_argument("residual_mixed: Lambda must be >= mu");
    using std::cos;
    using std::cosh;
    using std::exp;
    using std::sin;
    using std::sinh;
    using std::sqrt;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar s = sqrt(mu);
    const Scalar q = sqrt(Lambda - mu);
    const Scalar a = s * pi;
    if (a <= Scalar(kStripCoshRescaleArg))
        return Scalar(2) * s * q * (cosh(a) * cos(q * pi) - Scalar(1)) +
               (Lambda - Scalar(2) * mu) * sinh(a) * sin(q * pi);
    const Scalar em = exp(-a);        // underflows harmlessly for huge mu
    const Scalar em2 = exp(Scalar(-2) * a);
    const Scalar cosh_scaled = (Scalar(1) + em2) / Scalar(2);
    const Scalar sinh_scaled = (Scalar(1) - em2) / Scalar(2);
    return Scalar(2) * s * q * (cosh_scaled * cos(q * pi) - em) +
           (Lambda - Scalar(2) * mu) * sinh_scaled * sin(q * pi);
}

/// Dispersion residual normalized to O(1) slope in Lambda: the mixed (or, at
/// mu == 0, axial) residual divided by cosh(sqrt(mu)*pi) * (1 + Lambda).
/// Roots coincide with the raw residual's; this is the quantity bisected and
/// reported in StripModeResult::residual_at_root.
template <typename Scalar>
Scalar residual_scaled(Scalar mu, Scalar Lambda) {
    if (!(mu >= Scalar(0))) throw std::invalid_argument("residual_scaled: mu must be nonnegative");
    if (mu == Scalar(0)) return residual_axial(Lambda) / (Scalar(1) + Lambda);
    if (!(Lambda >= mu)) throw std::invalid_argument("residual_scaled: Lambda must be >= mu");
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sqrt;
    using std::tanh;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar s = sqrt(mu);
    const Scalar q = sqrt(Lambda - mu);
    const Scalar a = s * pi;
    const Scalar sech = Scalar(1) / cosh(a);  // 1/inf -> 0 is the correct limit
    const Scalar value = Scalar(2) * s * q * (cos(q * pi) - sech) +
                         (Lambda - Scalar(2) * mu) * tanh(a) * sin(q * pi);
    return value / (Scalar(1) + Lambda);
}

/// Trial-function bound mu + (16 + 4 mu) / (4 + 3 mu) on the strip eigenvalue.
template <typename Scalar>
Scalar upper_bound_mu(Scalar mu) {
    if (!(mu >= Scalar(0))) throw std::invalid_argument("upper_bound_mu: mu must be nonnegative");
    return mu + (Scalar(16) + Scalar(4) * mu) / (Scalar(4) + Scalar(3) * mu);
}

/// Smallest Lambda >= mu with vanishing dispersion residual, located by a
/// sign-change scan (step scan_step starting at mu + kStripScanStart, capped
/// one step past upper_bound_mu) and bisection to width tol.  Candidates whose
/// closed-form profile is numerically trivial are skipped.  Throws
/// NoRootInBracket when the scan exhausts its range.
StripModeResult smallest_lambda(double mu, double scan_step = kStripScanStep,
                                double tol = kStripRootTol);

/// Closed-form cross-section profile at y in [0, pi], exactly as derived:
/// the axial profile
///   w(y) = -(sqrt(L) pi - sin(sqrt(L) pi)) (1 - cos(sqrt(L) y))
///          + (1 - cos(sqrt(L) pi)) (sqrt(L) y - sin(sqrt(L) y))
/// or the oscillating profile
///   h(y) = -(cosh(s y) - cos(q y)) / (cosh(s pi) - cos(q pi))
///          + (q sinh(s y) - s sin(q y)) / (q sinh(s pi) - s sin(q pi))
/// with s = sqrt(mu), q = sqrt(lambda - mu).  Throws DegenerateNormalization
/// when a denominator falls below machine scale.
double eval_eigenfunction(const StripEigenfunction& mode, double y);

/// Minimum of mu -> smallest_lambda(mu) over [0, 4]: a 64-point pre-scan
/// brackets the global minimum, then golden-section search refines mu_star
/// to width tol.
StripMinimum minimize_sigma(double tol = 1e-8);

/// Second-order finite-difference eigenvalue of the strip cross-section
/// pencil on n_grid subintervals of [0, pi]; converges to smallest_lambda's
/// value as O(n_grid^-2).  Requires n_grid >= 16.
double variational_lambda_mu(double mu, int n_grid);

}  // namespace bucklab
