#include "bucklab/operators.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <vector>

namespace bucklab {

namespace {

constexpr std::array<std::array<int, 2>, 4> kAxisSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

}  // namespace

SparseMat laplacian_matrix(const DiscreteDomain& dom) {
    const double inv_h2 = 1.0 / (dom.h * dom.h);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(dom.n_unknowns) * 5);
    for (int a = 0; a < dom.n_unknowns; ++a) {
        const auto& ij = dom.nodes[a];
        trips.emplace_back(a, a, 4.0 * inv_h2);
        for (const auto& d : kAxisSteps) {
            const int b = dom.index(ij.x() + d[0], ij.y() + d[1]);
            if (b >= 0) trips.emplace_back(a, b, -inv_h2);
        }
    }
    SparseMat A(dom.n_unknowns, dom.n_unknowns);
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

SparseMat biharmonic_matrix(const DiscreteDomain& dom) {
    const int n = dom.n_unknowns;
    const double inv_h2 = 1.0 / (dom.h * dom.h);
    const double inv_h4 = inv_h2 * inv_h2;

    // Contributions keyed by the unordered index pair (p ≤ q).  Each pair's
    // total is computed once, in a fixed order, and written to both (p, q)
    // and (q, p), which makes the assembled matrix symmetric exactly.
    std::vector<std::pair<int64_t, double>> contrib;
    contrib.reserve(static_cast<size_t>(n) * 16);
    const auto add = [&](int p, int q, double v) {
        if (p > q) std::swap(p, q);
        contrib.emplace_back(static_cast<int64_t>(p) * n + q, v);
    };

    // Gram expansion of the Laplacian square: for every interior node r,
    // every pair from the column stencil of A at r.
    std::vector<std::pair<int, double>> star;
    for (int r = 0; r < n; ++r) {
        const auto& ij = dom.nodes[r];
        star.clear();
        star.emplace_back(r, 4.0 * inv_h2);
        for (const auto& d : kAxisSteps) {
            const int b = dom.index(ij.x() + d[0], ij.y() + d[1]);
            if (b >= 0) star.emplace_back(b, -inv_h2);
        }
        for (size_t s = 0; s < star.size(); ++s)
            for (size_t t = s; t < star.size(); ++t)
                add(star[s].first, star[t].first, star[s].second * star[t].second);
    }

    // Reflection terms: group the interior axis neighbors of every ghost
    // node (a lattice neighbor outside the interior set), then couple every
    // pair within a group with weight 2/h⁴.
    std::map<std::pair<int, int>, std::vector<int>> ghosts;
    for (int a = 0; a < n; ++a) {
        const auto& ij = dom.nodes[a];
        for (const auto& d : kAxisSteps) {
            const int gi = ij.x() + d[0];
            const int gj = ij.y() + d[1];
            if (dom.index(gi, gj) < 0) ghosts[{gi, gj}].push_back(a);
        }
    }
    for (const auto& [g, members] : ghosts) {
        (void)g;
        for (size_t s = 0; s < members.size(); ++s)
            for (size_t t = s; t < members.size(); ++t)
                add(members[s], members[t], 2.0 * inv_h4);
    }

    std::stable_sort(contrib.begin(), contrib.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(contrib.size());
    size_t s = 0;
    while (s < contrib.size()) {
        size_t t = s;
        double sum = 0.0;
        while (t < contrib.size() && contrib[t].first == contrib[s].first) sum += contrib[t++].second;
        const int p = static_cast<int>(contrib[s].first / n);
        const int q = static_cast<int>(contrib[s].first % n);
        trips.emplace_back(p, q, sum);
        if (p != q) trips.emplace_back(q, p, sum);
        s = t;
    }
    SparseMat B(n, n);
    B.setFromTriplets(trips.begin(), trips.end());
    return B;
}

Eigen::MatrixX2d discrete_gradient(const DiscreteDomain& dom, const Eigen::VectorXd& f) {
    if (f.size() != dom.n_unknowns)
        throw std::invalid_argument("discrete_gradient: function size does not match domain");
    Eigen::MatrixX2d g(dom.n_unknowns, 2);
    for (int a = 0; a < dom.n_unknowns; ++a) {
        const auto& ij = dom.nodes[a];
        for (int axis = 0; axis < 2; ++axis) {
            const int di = axis == 0 ? 1 : 0;
            const int dj = axis == 0 ? 0 : 1;
            const int fwd = dom.index(ij.x() + di, ij.y() + dj);
            const int bwd = dom.index(ij.x() - di, ij.y() - dj);
            if (fwd >= 0 && bwd >= 0)
                g(a, axis) = (f[fwd] - f[bwd]) / (2.0 * dom.h);
            else if (fwd >= 0)
                g(a, axis) = (f[fwd] - f[a]) / dom.h;
            else if (bwd >= 0)
                g(a, axis) = (f[a] - f[bwd]) / dom.h;
            else
                g(a, axis) = 0.0;
        }
    }
    return g;
}

}  // namespace bucklab
