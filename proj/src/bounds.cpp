#include "bucklab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bucklab/rootfind.hpp"

namespace bucklab {

namespace {

constexpr double kThinBase = 8.0 * std::numbers::sqrt2 / 3.0;

}  // namespace

double thin_bound(double T, int n) {
    if (!(T >= 0.0)) throw std::invalid_argument("thin_bound: T must be nonnegative");
    if (n < 2) throw std::invalid_argument("thin_bound: dimension must be at least 2");
    const double bump = std::pow(2.0, 5.0 / 6.0) * std::cbrt(T / (n - 1.0));
    const double factor = 1.0 + bump;
    return kThinBase * factor * factor * factor;
}

BoundCurvePoint bound_curve_point(double T, int n) {
    BoundCurvePoint point;
    point.T = T;
    point.improved_bound = 4.0 - 2.0 * T;
    point.thin_bound = thin_bound(T, n);
    point.effective = std::min(point.improved_bound, point.thin_bound);
    return point;
}

double cylinder_bound(double lambda_A, double l) {
    if (!(lambda_A > 0.0)) throw std::invalid_argument("cylinder_bound: lambda_A must be positive");
    if (!(l > 0.0)) throw std::invalid_argument("cylinder_bound: length must be positive");
    const double pi = std::numbers::pi;
    return kThinBase * (lambda_A + std::numbers::sqrt2 * pi * pi / (l * l));
}

CrossingPoint crossing_point(int n, double tol) {
    if (n < 2) throw std::invalid_argument("crossing_point: dimension must be at least 2");
    if (!(tol > 0.0)) throw std::invalid_argument("crossing_point: tol must be positive");
    const auto gap = [n](double T) { return (4.0 - 2.0 * T) - thin_bound(T, n); };
    const double root = bisect(gap, 1e-12, 0.5, tol);
    return {root, 4.0 - 2.0 * root};
}

double estimatenu_bound(double lambda, double T, double alpha, double gradient_fraction) {
    if (!(alpha > 0.0)) throw std::invalid_argument("estimatenu_bound: alpha must be positive");
    if (!(gradient_fraction >= 0.0 && gradient_fraction <= 1.0))
        throw std::invalid_argument("estimatenu_bound: gradient_fraction must be in [0, 1]");
    const double numerator =
        16.0 - 8.0 * T + 8.0 * alpha + 3.0 * alpha * alpha + 48.0 * alpha * gradient_fraction;
    return lambda * numerator / (4.0 + 3.0 * alpha);
}

MinimizedBound estimatenu_minimum(double lambda, double T, double gradient_fraction) {
    const auto value = [&](double alpha) {
        return estimatenu_bound(lambda, T, alpha, gradient_fraction);
    };
    // golden section never probes the endpoints, so alpha stays positive
    const auto [alpha, best] = golden_min(value, 0.0, 8.0, 1e-10);
    return {alpha, best};
}

}  // namespace bucklab
