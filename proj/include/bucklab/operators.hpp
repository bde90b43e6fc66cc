#pragma once

#include <Eigen/Sparse>

#include "bucklab/grid.hpp"

namespace bucklab {

using SparseMat = Eigen::SparseMatrix<double>;

/// 5-point discrete −Laplacian with zero Dirichlet data: 4/h² on the
/// diagonal, −1/h² per interior axis neighbor; absent neighbors read as 0.
/// Symmetric positive definite on the interior set.
SparseMat laplacian_matrix(const DiscreteDomain& dom);

/// 13-point discrete biharmonic with clamped conditions: the square of the
/// Dirichlet Laplacian plus a reflection term of 2/h⁴ coupling, for every
/// lattice node just outside the interior set, each pair of its interior
/// axis neighbors (the ghost-value encoding of zero normal derivative).
/// Assembled from pair-keyed contribution lists accumulated in one fixed
/// order, so the matrix is exactly symmetric entry for entry.
SparseMat biharmonic_matrix(const DiscreteDomain& dom);

/// Per-node gradient: central difference where both axis neighbors are
/// interior, one-sided toward the single interior neighbor otherwise, zero
/// when the node has no interior neighbor along the axis.  Column 0 is ∂x,
/// column 1 is ∂y.
Eigen::MatrixX2d discrete_gradient(const DiscreteDomain& dom, const Eigen::VectorXd& f);

}  // namespace bucklab
