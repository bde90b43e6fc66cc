#pragma once

#include <string>
#include <vector>

#include "bucklab/operators.hpp"

namespace bucklab {

struct SolveOptions {
    double tol = 1e-10;        ///< bound on the reported residual_norm
    int max_iterations = 10000;  ///< total operator applications before NoConvergence
    int basis_cap = 250;       ///< Krylov vectors kept before a restart
};

/// One converged eigenpair.  The vector has unit discrete L² norm
/// (h^{d/2}·‖v‖₂ = 1) and residual_norm is the eigen-equation residual
/// normalized by the leading operator's max absolute row sum.
struct EigenResult {
    double value = 0.0;
    Eigen::VectorXd vector;
    int iterations = 0;
    double residual_norm = 0.0;
    double h = 0.0;
};

/// Mesh-refinement record: (h, value) per level, Richardson extrapolation
/// assuming second order, and the order observed from the last level triple.
struct ConvergenceStudy {
    std::vector<std::pair<double, double>> levels;
    double extrapolated = 0.0;
    double observed_order = 0.0;
    bool order_suspect = false;  ///< observed order below 1 (or not measurable)
};

enum class EigenKind { dirichlet, buckling };

/// A study together with its finest solve, the polygon identity, and a
/// Richardson error estimate (|extrapolated − finest value|).
struct StudiedValue {
    ConvergenceStudy study;
    EigenResult finest;
    DiscreteDomain domain;  ///< finest-level domain (owns the eigenvector's grid)
    std::string signature;
    double error_estimate = 0.0;

    double value() const { return study.extrapolated; }
};

/// Smallest eigenvalue of a sparse SPD matrix by Lanczos iteration on its
/// inverse (one sparse factorization, one solve per iteration, full
/// reorthogonalization).  Throws IndefinitePencil if the factorization is
/// not positive definite, NoConvergence past opts.max_iterations.
EigenResult smallest_eigen_sparse(const SparseMat& A, const SolveOptions& opts = {});

/// Smallest eigenvalue of the pencil B v = Λ A v (both SPD) by Lanczos on
/// B⁻¹A in the A-inner product.
EigenResult smallest_pencil_sparse(const SparseMat& B, const SparseMat& A,
                                   const SolveOptions& opts = {});

/// Smallest Dirichlet eigenvalue of the 5-point Laplacian on the domain.
/// The eigenvector is normalized to unit discrete L² and oriented so its
/// sum is positive.
EigenResult dirichlet_lambda(const DiscreteDomain& dom, const SolveOptions& opts = {});

/// Smallest clamped buckling eigenvalue of the pencil (biharmonic,
/// −Laplacian).  Requires h ≤ min_width/16 (TooCoarse otherwise).
EigenResult buckling_lambda(const DiscreteDomain& dom, const SolveOptions& opts = {});

/// 1D analogue of buckling_lambda on the interval (0, length): pencil of the
/// clamped second-difference forms, solved densely.  The smallest eigenvalue
/// tends to 4·(π/length)² as the grid refines.
EigenResult interval_buckling(int n_cells, double length);

/// Solve at every spacing in levels (strictly decreasing, one common ratio,
/// at least 3) and Richardson-extrapolate.  Levels too coarse to rasterize
/// propagate TooCoarse.
ConvergenceStudy refine_study(const ConvexPolygon& poly, EigenKind which,
                              const std::vector<double>& levels, const SolveOptions& opts = {});

/// refine_study plus the finest-level solve and domain, packaged for the
/// inequality checks.
StudiedValue study_polygon(const ConvexPolygon& poly, EigenKind which,
                           const std::vector<double>& levels, const SolveOptions& opts = {});

/// Geometric level ladder h = min_width/base, /2, ... (levels entries).
std::vector<double> level_ladder(const ConvexPolygon& poly, int base_divisor, int levels);

}  // namespace bucklab
