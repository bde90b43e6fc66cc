#include "bucklab/experiment.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bucklab/strip.hpp"

namespace bucklab {

namespace {

/// Clamped-interval quadratures on (0, length) matching the 1D pencil forms:
/// trapezoid of squared second differences with reflected end ghosts,
/// midpoint of squared forward differences, lumped squares.
struct ProfileIntegrals {
    double value2 = 0.0;
    double slope2 = 0.0;
    double bend2 = 0.0;
};

ProfileIntegrals profile_integrals(const std::vector<double>& h, double spacing) {
    const int n = static_cast<int>(h.size());  // interior samples, ends are zero
    ProfileIntegrals out;
    for (int i = 0; i < n; ++i) out.value2 += h[i] * h[i];
    out.value2 *= spacing;

    double prev = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double next = i < n ? h[i] : 0.0;
        const double d1 = (next - prev) / spacing;
        out.slope2 += d1 * d1;
        prev = next;
    }
    out.slope2 *= spacing;

    // nodes 0 and n+1 are the clamped ends; reflected ghosts encode the slope
    const auto node = [&](int j) { return (j >= 1 && j <= n) ? h[j - 1] : 0.0; };
    const double inv_d2 = 1.0 / (spacing * spacing);
    const double end_lo = 2.0 * node(1) * inv_d2;
    const double end_hi = 2.0 * node(n) * inv_d2;
    out.bend2 = 0.5 * (end_lo * end_lo + end_hi * end_hi);
    for (int r = 1; r <= n; ++r) {
        const double d2 = (node(r + 1) - 2.0 * node(r) + node(r - 1)) * inv_d2;
        out.bend2 += d2 * d2;
    }
    out.bend2 *= spacing;
    return out;
}

/// Quintic smoothstep 6t^5 - 15t^4 + 10t^3 and its first two derivatives.
struct Smoothstep {
    double s, ds, dds;
};

Smoothstep smoothstep(double t) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    return {6.0 * t3 * t2 - 15.0 * t2 * t2 + 10.0 * t3,
            30.0 * t2 * t2 - 60.0 * t3 + 30.0 * t2,
            120.0 * t3 - 180.0 * t2 + 60.0 * t};
}

/// Composite Simpson over [a, b] with 2m panels.
template <typename F>
double simpson(F&& f, double a, double b, int m) {
    const int panels = 2 * m;
    const double step = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += f(a + i * step) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * step / 3.0;
}

}  // namespace

StripLimitResult strip_limit_experiment(const std::vector<int>& aspects, const HPolicy& policy) {
    if (aspects.empty())
        throw std::invalid_argument("strip_limit_experiment: need at least one aspect");
    for (size_t i = 0; i < aspects.size(); ++i) {
        if (aspects[i] < 1)
            throw std::invalid_argument("strip_limit_experiment: aspects must be at least 1");
        if (i > 0 && aspects[i] <= aspects[i - 1])
            throw std::invalid_argument("strip_limit_experiment: aspects must be strictly increasing");
    }

    StripLimitResult result;
    result.sigma = minimize_sigma().sigma;
    for (const int k : aspects) {
        const auto poly = make_convex_polygon(
            {{0, 0}, {1, 0}, {1, static_cast<double>(k)}, {0, static_cast<double>(k)}});
        const auto ladder = level_ladder(poly, policy.base_divisor, policy.levels);
        const auto lambda = study_polygon(poly, EigenKind::dirichlet, ladder);
        const auto Lambda = study_polygon(poly, EigenKind::buckling, ladder);
        AspectRatioRow row;
        row.aspect = k;
        row.lambda = lambda.value();
        row.Lambda = Lambda.value();
        row.ratio = row.Lambda / row.lambda;
        row.lambda_error = lambda.error_estimate;
        row.Lambda_error = Lambda.error_estimate;
        result.rows.push_back(row);
    }

    const double final_ratio = result.rows.back().ratio;
    result.final_below_4 = final_ratio < 4.0;
    result.final_within_sigma_window = std::abs(final_ratio - result.sigma) <= 0.1;
    result.non_increasing_within_tol = true;
    for (size_t i = 1; i < result.rows.size(); ++i)
        if (result.rows[i].ratio > result.rows[i - 1].ratio + 0.02)
            result.non_increasing_within_tol = false;
    return result;
}

double cutoff_quotient(int k, double mu) {
    if (k < 1) throw std::invalid_argument("cutoff_quotient: k must be at least 1");
    if (!(mu > 0.0)) throw std::invalid_argument("cutoff_quotient: mu must be positive");

    const double pi = std::numbers::pi;
    const auto mode_root = smallest_lambda(mu);
    const StripEigenfunction mode{mu, mode_root.lambda_mu, StripModeKind::mixed};

    // cross-section integrals from dense samples of the closed-form profile
    const int n_cells = 8192;
    const double spacing = pi / n_cells;
    std::vector<double> profile(n_cells - 1);
    for (int i = 1; i < n_cells; ++i) profile[i - 1] = eval_eigenfunction(mode, i * spacing);
    const auto y = profile_integrals(profile, spacing);

    // axial factor c(x) = cos(sqrt(mu) x) phi(x), plateau then one-period ramp
    const double root_mu = std::sqrt(mu);
    const double period = pi / root_mu;
    const double plateau = (k - 1) * period;
    const auto envelope = [&](double x, double& phi, double& dphi, double& ddphi) {
        if (x <= plateau) {
            phi = 1.0;
            dphi = 0.0;
            ddphi = 0.0;
            return;
        }
        const auto s = smoothstep((x - plateau) / period);
        phi = 1.0 - s.s;
        dphi = -s.ds / period;
        ddphi = -s.dds / (period * period);
    };
    const auto c0 = [&](double x) {
        double phi, dphi, ddphi;
        envelope(x, phi, dphi, ddphi);
        const double c = std::cos(root_mu * x) * phi;
        return c * c;
    };
    const auto c1 = [&](double x) {
        double phi, dphi, ddphi;
        envelope(x, phi, dphi, ddphi);
        const double c = -root_mu * std::sin(root_mu * x) * phi + std::cos(root_mu * x) * dphi;
        return c * c;
    };
    const auto c2 = [&](double x) {
        double phi, dphi, ddphi;
        envelope(x, phi, dphi, ddphi);
        const double c = -mu * std::cos(root_mu * x) * phi -
                         2.0 * root_mu * std::sin(root_mu * x) * dphi +
                         std::cos(root_mu * x) * ddphi;
        return c * c;
    };
    // half-strip integrals; the even-extension factor 2 cancels in the quotient
    const int panels_per_period = 512;
    const int plateau_panels = std::max(1, (k - 1) * panels_per_period);
    const double x_value2 = simpson(c0, 0.0, plateau, plateau_panels) +
                            simpson(c0, plateau, k * period, panels_per_period);
    const double x_slope2 = simpson(c1, 0.0, plateau, plateau_panels) +
                            simpson(c1, plateau, k * period, panels_per_period);
    const double x_bend2 = simpson(c2, 0.0, plateau, plateau_panels) +
                           simpson(c2, plateau, k * period, panels_per_period);

    return (y.bend2 * x_value2 + 2.0 * y.slope2 * x_slope2 + y.value2 * x_bend2) /
           (y.slope2 * x_value2 + y.value2 * x_slope2);
}

}  // namespace bucklab
