#include "bucklab/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace bucklab {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void require_matching(const StudiedValue& a, const StudiedValue& b, const char* who) {
    if (a.signature != b.signature)
        throw MismatchedDomain(std::string(who) + ": eigenvalues come from different polygons");
}

void require_size(const DiscreteDomain& dom, const Eigen::VectorXd& u, const char* who) {
    if (u.size() != dom.n_unknowns)
        throw std::invalid_argument(std::string(who) + ": vector length does not match the grid");
}

/// Indices of the full 9-point neighborhood of unknown a, if every member is
/// itself an unknown.
struct Stencil {
    int e, w, n, s, ne, nw, se, sw;
};

std::optional<Stencil> full_stencil(const DiscreteDomain& dom, int a) {
    const int i = dom.nodes[a].x();
    const int j = dom.nodes[a].y();
    Stencil st;
    st.e = dom.index(i + 1, j);
    st.w = dom.index(i - 1, j);
    st.n = dom.index(i, j + 1);
    st.s = dom.index(i, j - 1);
    st.ne = dom.index(i + 1, j + 1);
    st.nw = dom.index(i - 1, j + 1);
    st.se = dom.index(i + 1, j - 1);
    st.sw = dom.index(i - 1, j - 1);
    for (const int b : {st.e, st.w, st.n, st.s, st.ne, st.nw, st.se, st.sw})
        if (b < 0) return std::nullopt;
    return st;
}

double clearance_needed(const DiscreteDomain& dom) {
    return std::max(3.0 * dom.h, 0.3 * inradius(dom.polygon).r);
}

}  // namespace

InequalityReport check_payne(const StudiedValue& lambda, const StudiedValue& Lambda) {
    require_matching(lambda, Lambda, "check_payne");
    const double tolerance = 3.0 * (Lambda.error_estimate + 4.0 * lambda.error_estimate);
    return make_report("payne", Lambda.value(), 4.0 * lambda.value(), tolerance,
                       {{"lambda", fmt(lambda.value())},
                        {"Lambda", fmt(Lambda.value())},
                        {"lambda_error", fmt(lambda.error_estimate)},
                        {"Lambda_error", fmt(Lambda.error_estimate)},
                        {"h_finest", fmt(Lambda.finest.h)},
                        {"safety_factor", "3"}});
}

InequalityReport check_improved(const StudiedValue& lambda, const StudiedValue& Lambda,
                                const ThinnessTerm& T) {
    require_matching(lambda, Lambda, "check_improved");
    if (!(T.value >= 0.0))
        throw std::invalid_argument("check_improved: thinness must be nonnegative");
    const double factor = 4.0 - 2.0 * T.value;
    const double tolerance = 3.0 * (Lambda.error_estimate + factor * lambda.error_estimate);
    return make_report("improved_payne", Lambda.value(), factor * lambda.value(), tolerance,
                       {{"lambda", fmt(lambda.value())},
                        {"Lambda", fmt(Lambda.value())},
                        {"thinness", fmt(T.value)},
                        {"factor", fmt(factor)},
                        {"lambda_error", fmt(lambda.error_estimate)},
                        {"Lambda_error", fmt(Lambda.error_estimate)},
                        {"safety_factor", "3"}});
}

InequalityReport check_u_squared_identity(const DiscreteDomain& dom, const EigenResult& u,
                                          double tolerance) {
    require_size(dom, u.vector, "check_u_squared_identity");
    if (!(u.value > 0.0))
        throw std::invalid_argument("check_u_squared_identity: eigenvalue must be positive");
    const double cell = dom.h * dom.h;
    const Eigen::MatrixX2d g = discrete_gradient(dom, u.vector);
    const double quartic = cell * u.vector.array().square().square().sum();
    const double mixed =
        cell * (u.vector.array().square() * g.rowwise().squaredNorm().array()).sum();
    const double deviation = std::abs(u.value * quartic / (3.0 * mixed) - 1.0);
    return make_report("u_squared_identity", deviation, 0.0, tolerance,
                       {{"quartic_integral", fmt(quartic)},
                        {"gradient_integral", fmt(mixed)},
                        {"lambda", fmt(u.value)},
                        {"h", fmt(dom.h)}});
}

double rayleigh_u_squared(const DiscreteDomain& dom, const Eigen::VectorXd& u, double lambda) {
    require_size(dom, u, "rayleigh_u_squared");
    if (!(lambda > 0.0))
        throw std::invalid_argument("rayleigh_u_squared: eigenvalue must be positive");
    const Eigen::VectorXd v = u.array().square().matrix();
    const SparseMat A = laplacian_matrix(dom);
    const SparseMat B = biharmonic_matrix(dom);
    const double denominator = v.dot(A * v);
    if (!(denominator > 0.0))
        throw DegenerateNormalization("rayleigh_u_squared: squared eigenvector has no gradient energy");
    return v.dot(B * v) / denominator;
}

double oscillating_bound(const DiscreteDomain& dom, const Eigen::VectorXd& u, double lambda,
                         double mu, const Eigen::Vector2d& nu) {
    require_size(dom, u, "oscillating_bound");
    if (!(lambda > 0.0))
        throw std::invalid_argument("oscillating_bound: eigenvalue must be positive");
    if (!(mu > 0.0)) throw std::invalid_argument("oscillating_bound: mu must be positive");
    if (std::abs(nu.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("oscillating_bound: direction must be a unit vector");

    const Eigen::VectorXd v = u.array().square().matrix();
    const SparseMat A = laplacian_matrix(dom);
    const SparseMat B = biharmonic_matrix(dom);
    // every integral carries one factor of cell area, so it cancels in the ratios
    const double q2 = v.dot(B * v);
    const double q1 = v.dot(A * v);
    const double q0 = v.squaredNorm();
    const Eigen::MatrixX2d g = discrete_gradient(dom, v);
    const double q_nu = (g * nu).squaredNorm();
    const double denominator = q1 + mu * q0;
    if (!(denominator > 0.0))
        throw DegenerateNormalization("oscillating_bound: degenerate test function");
    return mu + (q2 + mu * q1) / denominator + 4.0 * mu * q_nu / denominator;
}

RayleighChain rayleigh_chain(const StudiedValue& lambda, const StudiedValue& Lambda,
                             const ThinnessTerm& T) {
    require_matching(lambda, Lambda, "rayleigh_chain");
    RayleighChain chain;
    chain.quotient =
        rayleigh_u_squared(lambda.domain, lambda.finest.vector, lambda.finest.value);

    // one coarser level gives a Richardson-style error estimate for the quotient
    const auto coarse_dom = rasterize(lambda.domain.polygon, 2.0 * lambda.domain.h);
    const auto coarse_u = dirichlet_lambda(coarse_dom);
    const double coarse_quotient =
        rayleigh_u_squared(coarse_dom, coarse_u.vector, coarse_u.value);
    const double quotient_error = std::abs(chain.quotient - coarse_quotient) / 3.0;

    // on the shared finest grid the variational principle is exact
    double buckling_level = Lambda.finest.value;
    double lower_tolerance = 1e-9 * std::abs(chain.quotient);
    if (Lambda.finest.h != lambda.finest.h) {
        buckling_level = Lambda.value();
        lower_tolerance += 3.0 * Lambda.error_estimate;
    }
    chain.above_buckling =
        make_report("rayleigh_above_buckling", buckling_level, chain.quotient, lower_tolerance,
                    {{"quotient", fmt(chain.quotient)}, {"h", fmt(lambda.finest.h)}});

    const double factor = 4.0 - 2.0 * T.value;
    const double upper_tolerance =
        3.0 * factor * lambda.error_estimate + 3.0 * quotient_error;
    chain.below_improved =
        make_report("rayleigh_below_improved", chain.quotient, factor * lambda.value(),
                    upper_tolerance,
                    {{"quotient", fmt(chain.quotient)},
                     {"quotient_error", fmt(quotient_error)},
                     {"thinness", fmt(T.value)},
                     {"safety_factor", "3"}});
    return chain;
}

InequalityReport log_concavity_check(const DiscreteDomain& dom, const Eigen::VectorXd& u,
                                     double diameter, double tolerance) {
    require_size(dom, u, "log_concavity_check");
    if (!(diameter > 0.0))
        throw std::invalid_argument("log_concavity_check: diameter must be positive");

    const double clearance = clearance_needed(dom);
    const double inv_h2 = 1.0 / (dom.h * dom.h);
    double worst = std::numeric_limits<double>::infinity();
    int qualifying = 0;

    for (int a = 0; a < dom.n_unknowns; ++a) {
        const auto p = dom.position(dom.nodes[a].x(), dom.nodes[a].y());
        if (boundary_margin(dom.polygon, p) < clearance) continue;
        const auto st = full_stencil(dom, a);
        if (!st) continue;
        ++qualifying;

        const std::array<int, 9> members{a,      st->e,  st->w,  st->n, st->s,
                                         st->ne, st->nw, st->se, st->sw};
        std::array<double, 9> logs;
        for (size_t m = 0; m < members.size(); ++m) {
            if (!(u[members[m]] > 0.0))
                throw NonPositiveU("log_concavity_check: function not positive at a qualifying node");
            logs[m] = std::log(u[members[m]]);
        }
        const double hxx = (logs[1] - 2.0 * logs[0] + logs[2]) * inv_h2;
        const double hyy = (logs[3] - 2.0 * logs[0] + logs[4]) * inv_h2;
        const double hxy = (logs[5] - logs[6] - logs[7] + logs[8]) * 0.25 * inv_h2;
        // smallest eigenvalue of -Hess(log u)
        const double mean = -(hxx + hyy) / 2.0;
        const double radius = std::hypot((hxx - hyy) / 2.0, hxy);
        worst = std::min(worst, mean - radius);
    }

    if (qualifying == 0)
        throw TooCoarse("log_concavity_check: no interior node clears the boundary margin");

    const double pi = std::numbers::pi;
    return make_report("log_concavity", pi * pi / (diameter * diameter), worst, tolerance,
                       {{"qualifying_nodes", std::to_string(qualifying)},
                        {"clearance", fmt(clearance)},
                        {"h", fmt(dom.h)}});
}

InequalityReport check_curvature_bound(const DiscreteDomain& dom, const Eigen::VectorXd& u,
                                       double diameter, double tolerance) {
    require_size(dom, u, "check_curvature_bound");
    if (!(diameter > 0.0))
        throw std::invalid_argument("check_curvature_bound: diameter must be positive");

    const double clearance = clearance_needed(dom);
    const double inv_h2 = 1.0 / (dom.h * dom.h);
    const double rate = std::numbers::pi * std::numbers::pi / (diameter * diameter);
    const Eigen::MatrixX2d g = discrete_gradient(dom, u);
    const double slope_floor = 1e-6 * g.rowwise().norm().maxCoeff();

    double worst = std::numeric_limits<double>::infinity();
    int evaluated = 0;
    int skipped = 0;

    for (int a = 0; a < dom.n_unknowns; ++a) {
        const auto p = dom.position(dom.nodes[a].x(), dom.nodes[a].y());
        if (boundary_margin(dom.polygon, p) < clearance) continue;
        const auto st = full_stencil(dom, a);
        if (!st) continue;
        const double gx = g(a, 0);
        const double gy = g(a, 1);
        const double slope = std::hypot(gx, gy);
        if (slope < slope_floor) {
            ++skipped;  // critical point of u, curvature undefined
            continue;
        }
        ++evaluated;

        const double hxx = (u[st->e] - 2.0 * u[a] + u[st->w]) * inv_h2;
        const double hyy = (u[st->n] - 2.0 * u[a] + u[st->s]) * inv_h2;
        const double hxy = (u[st->ne] - u[st->nw] - u[st->se] + u[st->sw]) * 0.25 * inv_h2;
        // second derivative along the level line, then the curvature of that line
        const double tangential =
            (gy * gy * hxx - 2.0 * gx * gy * hxy + gx * gx * hyy) / (slope * slope);
        const double curvature = -tangential / slope;
        worst = std::min(worst, curvature - rate * u[a] / slope);
    }

    return make_report("curvature_bound", 0.0, worst, tolerance,
                       {{"evaluated_nodes", std::to_string(evaluated)},
                        {"skipped_nodes", std::to_string(skipped)},
                        {"clearance", fmt(clearance)},
                        {"h", fmt(dom.h)}});
}

}  // namespace bucklab
