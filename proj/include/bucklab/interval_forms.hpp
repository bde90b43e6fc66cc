#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bucklab {

/// Quadratic forms of the clamped interval discretization on [0, length].
///
/// Nodes y_i = i * spacing for i = 0..n_cells; the clamped end values are
/// eliminated, leaving unknowns at i = 1..n_cells-1.  `bending` is the
/// trapezoid quadrature of the squared second difference (reflected ghost
/// values encode the clamped slope), `stiffness` the midpoint quadrature of
/// the squared forward difference, `mass` the lumped L2 form.
template <typename Scalar>
struct IntervalForms {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> bending;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> stiffness;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> mass;
    Scalar spacing = Scalar(0);
    int n_cells = 0;
};

template <typename Scalar>
IntervalForms<Scalar> make_clamped_interval_forms(int n_cells, Scalar length) {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (n_cells < 2) throw std::invalid_argument("make_clamped_interval_forms: n_cells < 2");
    if (!(length > Scalar(0))) throw std::invalid_argument("make_clamped_interval_forms: length <= 0");

    const int n = n_cells - 1;  // interior unknowns
    const Scalar d = length / Scalar(n_cells);
    IntervalForms<Scalar> out;
    out.spacing = d;
    out.n_cells = n_cells;
    out.bending = Matrix::Zero(n, n);
    out.stiffness = Matrix::Zero(n, n);
    out.mass = Matrix::Zero(n, n);

    // One quadrature row: accumulate weight * row^T row into the upper
    // triangle only; mirroring afterwards keeps the form exactly symmetric.
    using Entry = std::pair<int, Scalar>;
    auto accumulate = [n](Matrix& form, const std::vector<Entry>& row, Scalar weight) {
        for (const auto& [a, va] : row)
            for (const auto& [b, vb] : row) {
                if (a > b) continue;
                if (a < 0 || b >= n) continue;
                form(a, b) += weight * va * vb;
            }
    };

    const Scalar inv_d2 = Scalar(1) / (d * d);
    const Scalar inv_d = Scalar(1) / d;

    // Second differences at every node; clamped ends use reflected ghosts.
    accumulate(out.bending, {{0, Scalar(2) * inv_d2}}, d / Scalar(2));
    for (int r = 1; r < n_cells; ++r) {
        std::vector<Entry> row;
        if (r - 2 >= 0) row.push_back({r - 2, inv_d2});
        row.push_back({r - 1, Scalar(-2) * inv_d2});
        if (r < n) row.push_back({r, inv_d2});
        accumulate(out.bending, row, d);
    }
    accumulate(out.bending, {{n - 1, Scalar(2) * inv_d2}}, d / Scalar(2));

    // Forward differences per cell.
    accumulate(out.stiffness, {{0, inv_d}}, d);
    for (int r = 1; r < n_cells - 1; ++r)
        accumulate(out.stiffness, {{r - 1, -inv_d}, {r, inv_d}}, d);
    accumulate(out.stiffness, {{n - 1, -inv_d}}, d);

    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            out.bending(b, a) = out.bending(a, b);
            out.stiffness(b, a) = out.stiffness(a, b);
        }
    out.mass = Matrix::Identity(n, n) * d;
    return out;
}

}  // namespace bucklab
