#include "bucklab/strip.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bucklab/interval_forms.hpp"
#include "bucklab/pencil.hpp"
#include "bucklab/rootfind.hpp"

namespace bucklab {

namespace {

constexpr double kPi = std::numbers::pi;

// Largest profile amplitude over a coarse grid, normalized by the largest
// basis coefficient of the closed form so the measure is scale-free in mu.
// Returns 0 when the closed form cannot be normalized at this (mu, Lambda).
double normalized_mode_amplitude(double mu, double lambda) {
    StripEigenfunction mode;
    mode.mu = mu;
    mode.lambda = lambda;
    mode.kind = mu == 0.0 ? StripModeKind::axial : StripModeKind::mixed;

    double scale;
    if (mode.kind == StripModeKind::axial) {
        const double theta = std::sqrt(lambda) * kPi;
        scale = std::max(std::abs(theta - std::sin(theta)), std::abs(1.0 - std::cos(theta)));
    } else {
        const double s = std::sqrt(mu);
        const double q = std::sqrt(lambda - mu);
        const double a = s * kPi;
        const double d1 = std::cosh(a) - std::cos(q * kPi);
        const double d2 = q * std::sinh(a) - s * std::sin(q * kPi);
        scale = std::max(1.0 / std::abs(d1), std::max(q, s) / std::abs(d2));
    }
    if (!(scale > 1e-300) || !std::isfinite(scale)) return 0.0;

    double amplitude = 0.0;
    try {
        for (int k = 0; k < 64; ++k) {
            const double y = kPi * static_cast<double>(k) / 63.0;
            amplitude = std::max(amplitude, std::abs(eval_eigenfunction(mode, y)) / scale);
        }
    } catch (const DegenerateNormalization&) {
        return 0.0;
    }
    return amplitude;
}

}  // namespace

StripModeResult smallest_lambda(double mu, double scan_step, double tol) {
    if (!(mu >= 0.0)) throw std::invalid_argument("smallest_lambda: mu must be nonnegative");
    if (!(scan_step > 0.0)) throw std::invalid_argument("smallest_lambda: scan_step must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("smallest_lambda: tol must be positive");

    const auto residual = [mu](double lambda) { return residual_scaled(mu, lambda); };
    const double start = mu + kStripScanStart;
    const double stop = upper_bound_mu(mu) + scan_step;

    double from = start;
    while (true) {
        const auto change = find_sign_change(residual, from, scan_step, stop);
        if (!change) {
            std::ostringstream msg;
            msg << "no dispersion sign change for mu=" << mu << " up to Lambda=" << stop;
            throw NoRootInBracket(msg.str());
        }
        const double root = bisect(residual, change->lo, change->hi, change->f_lo, change->f_hi, tol);
        // Beyond the cosh rescale threshold the closed-form profile underflows
        // entirely, so the amplitude filter cannot be evaluated; the residual
        // characterization itself certifies the mode is nonzero there.
        const bool unresolvable = std::sqrt(mu) * kPi > kStripCoshRescaleArg;
        if (unresolvable || normalized_mode_amplitude(mu, root) >= 1e-8) {
            StripModeResult out;
            out.mu = mu;
            out.lambda_mu = root;
            out.residual_at_root = residual(root);
            out.bracket = {change->lo, change->hi};
            return out;
        }
        from = change->hi;  // profile vanished identically; keep scanning
    }
}

double eval_eigenfunction(const StripEigenfunction& mode, double y) {
    if (!(y >= 0.0 && y <= kPi)) throw std::invalid_argument("eval_eigenfunction: y must lie in [0, pi]");

    if (mode.kind == StripModeKind::axial) {
        if (!(mode.lambda > 0.0)) throw std::invalid_argument("eval_eigenfunction: lambda must be positive");
        const double r = std::sqrt(mode.lambda);
        return -(r * kPi - std::sin(r * kPi)) * (1.0 - std::cos(r * y)) +
               (1.0 - std::cos(r * kPi)) * (r * y - std::sin(r * y));
    }

    if (!(mode.mu > 0.0)) throw std::invalid_argument("eval_eigenfunction: mixed mode needs mu > 0");
    if (!(mode.lambda >= mode.mu)) throw std::invalid_argument("eval_eigenfunction: lambda must be >= mu");
    const double s = std::sqrt(mode.mu);
    const double q = std::sqrt(mode.lambda - mode.mu);
    const double a = s * kPi;

    // For huge mu both terms of each quotient are divided by exp(a); the
    // quotients themselves are unchanged and every exponent stays <= 0.
    const bool rescale = a > kStripCoshRescaleArg;
    const auto cosh_part = [&](double x) {
        return rescale ? 0.5 * (std::exp(x - a) + std::exp(-x - a)) : std::cosh(x);
    };
    const auto sinh_part = [&](double x) {
        return rescale ? 0.5 * (std::exp(x - a) - std::exp(-x - a)) : std::sinh(x);
    };
    const double small = rescale ? std::exp(-a) : 1.0;  // scale of O(1) terms

    const double den1 = cosh_part(a) - std::cos(q * kPi) * small;
    const double den2 = q * sinh_part(a) - s * std::sin(q * kPi) * small;
    const double floor1 = 1e-14 * (cosh_part(a) + small);
    const double floor2 = 1e-14 * (q * sinh_part(a) + s * small);
    if (std::abs(den1) <= floor1 || std::abs(den2) <= floor2)
        throw DegenerateNormalization("eval_eigenfunction: profile normalization denominator vanishes");

    const double num1 = cosh_part(s * y) - std::cos(q * y) * small;
    const double num2 = q * sinh_part(s * y) - s * std::sin(q * y) * small;
    return -num1 / den1 + num2 / den2;
}

StripMinimum minimize_sigma(double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("minimize_sigma: tol must be positive");

    constexpr int n_scan = 64;
    std::array<double, n_scan> mus{}, values{};
    int best = 0;
    for (int i = 0; i < n_scan; ++i) {
        mus[i] = 4.0 * static_cast<double>(i) / (n_scan - 1);
        values[i] = smallest_lambda(mus[i]).lambda_mu;
        if (values[i] < values[best]) best = i;
    }
    int interior_minima = 0;
    for (int i = 1; i + 1 < n_scan; ++i)
        if (values[i] < values[i - 1] && values[i] < values[i + 1]) ++interior_minima;
    const double lo = mus[std::max(best - 1, 0)];
    const double hi = mus[std::min(best + 1, n_scan - 1)];

    const auto objective = [](double mu) { return smallest_lambda(mu).lambda_mu; };
    const auto [mu_star, sigma] = golden_min(objective, lo, hi, tol);

    StripMinimum out;
    out.mu_star = mu_star;
    out.sigma = sigma;
    out.unimodal_pre_scan = interior_minima <= 1;
    return out;
}

double variational_lambda_mu(double mu, int n_grid) {
    if (!(mu >= 0.0)) throw std::invalid_argument("variational_lambda_mu: mu must be nonnegative");
    if (n_grid < 16) throw std::invalid_argument("variational_lambda_mu: n_grid must be >= 16");

    const auto forms = make_clamped_interval_forms<double>(n_grid, kPi);
    const Eigen::MatrixXd numerator = forms.bending + mu * forms.stiffness;
    const Eigen::MatrixXd denominator = forms.stiffness + mu * forms.mass;
    return mu + smallest_dense_pencil<double>(numerator, denominator).value;
}

}  // namespace bucklab
