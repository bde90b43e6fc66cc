#include "bucklab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace bucklab {

namespace {

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() * b.y() - a.y() * b.x();
}

double point_set_diameter(const std::vector<Eigen::Vector2d>& pts) {
    double best = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, (pts[i] - pts[j]).norm());
    return best;
}

double signed_area(const std::vector<Eigen::Vector2d>& pts) {
    double twice = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        twice += cross2(pts[i], pts[(i + 1) % pts.size()]);
    return twice / 2.0;
}

// Outward unit normal of edge i for a counter-clockwise polygon.
Eigen::Vector2d edge_outward_normal(const ConvexPolygon& poly, size_t i) {
    const auto& a = poly.vertices[i];
    const auto& b = poly.vertices[(i + 1) % poly.vertices.size()];
    const Eigen::Vector2d e = b - a;
    return Eigen::Vector2d(e.y(), -e.x()).normalized();
}

}  // namespace

ConvexPolygon make_convex_polygon(std::vector<Eigen::Vector2d> points) {
    if (points.size() < 3) throw InvalidPolygon("polygon needs at least 3 vertices");
    const double scale = point_set_diameter(points);
    if (!(scale > 0.0)) throw InvalidPolygon("all vertices coincide");
    const double dup_tol = 1e-12 * scale;
    const double cross_tol = 1e-12 * scale * scale;

    std::vector<Eigen::Vector2d> cleaned;
    for (const auto& p : points) {
        if (!cleaned.empty() && (p - cleaned.back()).norm() <= dup_tol) continue;
        cleaned.push_back(p);
    }
    while (cleaned.size() > 1 && (cleaned.front() - cleaned.back()).norm() <= dup_tol)
        cleaned.pop_back();
    if (cleaned.size() < 3) throw InvalidPolygon("fewer than 3 distinct vertices");

    if (std::abs(signed_area(cleaned)) <= cross_tol)
        throw InvalidPolygon("polygon has numerically zero area");
    if (signed_area(cleaned) < 0.0) std::reverse(cleaned.begin(), cleaned.end());

    // Drop collinear vertices until every remaining turn is a strict left
    // turn; a strict right turn is a convexity violation.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < cleaned.size() && cleaned.size() > 3; ++i) {
            const auto& prev = cleaned[(i + cleaned.size() - 1) % cleaned.size()];
            const auto& next = cleaned[(i + 1) % cleaned.size()];
            if (std::abs(cross2(cleaned[i] - prev, next - cleaned[i])) <= cross_tol) {
                cleaned.erase(cleaned.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }

    for (size_t i = 0; i < cleaned.size(); ++i) {
        const auto& prev = cleaned[(i + cleaned.size() - 1) % cleaned.size()];
        const auto& next = cleaned[(i + 1) % cleaned.size()];
        const double turn = cross2(cleaned[i] - prev, next - cleaned[i]);
        if (turn <= cross_tol) {
            std::ostringstream msg;
            msg << "reflex or flat vertex " << i << " at (" << cleaned[i].x() << ", "
                << cleaned[i].y() << ")";
            throw NonConvexPolygon(msg.str(), static_cast<int>(i));
        }
    }

    ConvexPolygon poly;
    poly.vertices = std::move(cleaned);
    return poly;
}

double support(const ConvexPolygon& poly, const Eigen::Vector2d& nu) {
    if (std::abs(nu.norm() - 1.0) > 1e-12) throw NotUnit("support direction is not unit length");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : poly.vertices) best = std::max(best, v.dot(nu));
    return best;
}

double diameter(const ConvexPolygon& poly) { return point_set_diameter(poly.vertices); }

double min_width(const ConvexPolygon& poly) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < poly.vertices.size(); ++i) {
        const Eigen::Vector2d nu = edge_outward_normal(poly, i);
        best = std::min(best, support(poly, nu) + support(poly, -nu));
    }
    if (best <= 1e-12 * diameter(poly))
        throw DegenerateWidth("polygon is numerically flat");
    return best;
}

InradiusResult inradius(const ConvexPolygon& poly) {
    const size_t m = poly.vertices.size();
    std::vector<Eigen::Vector2d> normals(m);
    std::vector<double> offsets(m);
    for (size_t i = 0; i < m; ++i) {
        normals[i] = edge_outward_normal(poly, i);
        offsets[i] = normals[i].dot(poly.vertices[i]);
    }
    const double slack = 1e-12 * std::max(diameter(poly), 1.0);

    // The optimum of max r s.t. nu_i . c + r <= b_i is attained with three
    // active constraints; enumerate the triples and keep the best feasible
    // solution.  Quadratic/cubic in edge count, fine for polygon inputs.
    InradiusResult best;
    best.r = -1.0;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            for (size_t k = j + 1; k < m; ++k) {
                Eigen::Matrix3d A;
                A << normals[i].x(), normals[i].y(), 1.0,
                     normals[j].x(), normals[j].y(), 1.0,
                     normals[k].x(), normals[k].y(), 1.0;
                if (std::abs(A.determinant()) <= 1e-12) continue;
                const Eigen::Vector3d rhs(offsets[i], offsets[j], offsets[k]);
                const Eigen::Vector3d sol = A.partialPivLu().solve(rhs);
                const Eigen::Vector2d c(sol[0], sol[1]);
                const double r = sol[2];
                if (r < 0.0 || r <= best.r) continue;
                bool feasible = true;
                for (size_t l = 0; l < m; ++l)
                    if (normals[l].dot(c) + r > offsets[l] + slack) {
                        feasible = false;
                        break;
                    }
                if (feasible) {
                    best.r = r;
                    best.center = c;
                }
            }
    if (best.r < 0.0) throw InvalidPolygon("inradius program has no feasible basic solution");
    return best;
}

double polygon_area(const ConvexPolygon& poly) { return signed_area(poly.vertices); }

double boundary_margin(const ConvexPolygon& poly, const Eigen::Vector2d& p) {
    double margin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < poly.vertices.size(); ++i) {
        const Eigen::Vector2d nu = edge_outward_normal(poly, i);
        margin = std::min(margin, nu.dot(poly.vertices[i]) - nu.dot(p));
    }
    return margin;
}

GeometrySummary summarize(const ConvexPolygon& poly) {
    GeometrySummary out;
    out.diameter = diameter(poly);
    out.min_width = min_width(poly);
    out.inradius = inradius(poly).r;
    out.area = polygon_area(poly);
    return out;
}

ThinnessTerm thinness(double diameter, double lambda, int dimension) {
    if (!(diameter > 0.0)) throw std::invalid_argument("thinness: diameter must be positive");
    if (!(lambda > 0.0)) throw std::invalid_argument("thinness: lambda must be positive");
    if (dimension < 2) throw std::invalid_argument("thinness: dimension must be >= 2");
    ThinnessTerm out;
    const double pi = std::numbers::pi;
    out.value = (dimension - 1) * pi * pi / (diameter * diameter * lambda);
    out.dimension = dimension;
    return out;
}

InequalityReport width_lambda_sandwich(const ConvexPolygon& poly, double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("width_lambda_sandwich: lambda must be positive");
    const double w = min_width(poly);
    const double pi = std::numbers::pi;
    std::map<std::string, std::string> meta;
    meta["min_width"] = std::to_string(w);
    return make_report("width_lambda_sandwich", pi * pi, w * w * lambda, 0.0, std::move(meta));
}

}  // namespace bucklab
