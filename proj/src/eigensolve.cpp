#include "bucklab/eigensolve.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bucklab/interval_forms.hpp"
#include "bucklab/pencil.hpp"

namespace bucklab {

namespace {

double max_abs_row_sum(const SparseMat& m) {
    Eigen::VectorXd sums = Eigen::VectorXd::Zero(m.rows());
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMat::InnerIterator it(m, k); it; ++it) sums[it.row()] += std::abs(it.value());
    return sums.maxCoeff();
}

// Largest eigenvalue of OP = lead⁻¹·metric (metric == nullptr reads as the
// identity), self-adjoint in the metric inner product, by Lanczos iteration
// with full reorthogonalization and restarts.  Returns the smallest pencil
// eigenvalue 1/θ with its vector (unit Euclidean norm, caller renormalizes).
EigenResult lanczos_smallest(const SparseMat& lead, const SparseMat* metric,
                             const SolveOptions& opts) {
    const int n = static_cast<int>(lead.rows());
    if (opts.tol <= 0.0 || opts.max_iterations < 1 || opts.basis_cap < 2)
        throw std::invalid_argument("lanczos: tol, max_iterations, basis_cap must be positive");

    Eigen::SimplicialLDLT<SparseMat> solver(lead);
    if (solver.info() != Eigen::Success)
        throw SingularPencil("sparse factorization of the leading operator failed");
    if (solver.vectorD().minCoeff() <= 0.0)
        throw IndefinitePencil("leading operator has a nonpositive pivot");

    const double lead_scale = max_abs_row_sum(lead);
    const auto metric_apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return metric ? Eigen::VectorXd((*metric) * x) : x;
    };

    Eigen::VectorXd v0 = Eigen::VectorXd::Ones(n);
    int total_ops = 0;
    double best_resid = std::numeric_limits<double>::infinity();

    while (true) {
        std::vector<Eigen::VectorXd> Q, Z;  // basis and its metric image
        std::vector<double> alphas, betas;

        Eigen::VectorXd z0 = metric_apply(v0);
        const double nrm2 = v0.dot(z0);
        if (!(nrm2 > 0.0)) throw IndefinitePencil("metric form has a nonpositive direction");
        Q.push_back(v0 / std::sqrt(nrm2));
        Z.push_back(z0 / std::sqrt(nrm2));

        const int cap = std::min(opts.basis_cap, n);
        for (int k = 0; k < cap; ++k) {
            if (total_ops >= opts.max_iterations) {
                std::ostringstream msg;
                msg << "no convergence after " << total_ops
                    << " operator applications (best residual " << best_resid << ")";
                throw NoConvergence(msg.str());
            }
            Eigen::VectorXd w = solver.solve(Z[k]);
            ++total_ops;
            Eigen::VectorXd mw;
            if (metric) mw = (*metric) * w;

            const double alpha = w.dot(Z[k]);
            w -= alpha * Q[k];
            if (metric) mw -= alpha * Z[k];
            if (k > 0) {
                w -= betas[k - 1] * Q[k - 1];
                if (metric) mw -= betas[k - 1] * Z[k - 1];
            }
            for (int pass = 0; pass < 2; ++pass) {
                for (int i = 0; i <= k; ++i) {
                    const double c = w.dot(Z[i]);
                    w -= c * Q[i];
                    if (metric) mw -= c * Z[i];
                }
            }
            alphas.push_back(alpha);
            const double beta2 = metric ? w.dot(mw) : w.squaredNorm();
            if (metric && beta2 < -1e-12 * std::abs(alpha))
                throw IndefinitePencil("metric form has a nonpositive direction");
            const double beta = std::sqrt(std::max(beta2, 0.0));
            betas.push_back(beta);

            const int m = k + 1;
            Eigen::Map<const Eigen::VectorXd> diag(alphas.data(), m);
            Eigen::Map<const Eigen::VectorXd> sub(betas.data(), m > 1 ? m - 1 : 0);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
            es.computeFromTridiagonal(diag, sub.size() ? Eigen::VectorXd(sub)
                                                       : Eigen::VectorXd::Zero(0));
            const double theta = es.eigenvalues()(m - 1);
            const Eigen::VectorXd y = es.eigenvectors().col(m - 1);
            if (!(theta > 0.0)) throw IndefinitePencil("pencil eigenvalue estimate not positive");
            const double value = 1.0 / theta;
            const double ritz_est = beta * std::abs(y(m - 1));

            const double alpha_scale = diag.cwiseAbs().maxCoeff();
            const bool subspace_exhausted = beta <= 1e-13 * alpha_scale;
            const bool worth_checking = ritz_est <= 10.0 * opts.tol * theta ||
                                        (m >= 10 && m % 10 == 0) || subspace_exhausted ||
                                        m == cap;
            if (worth_checking) {
                Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
                for (int i = 0; i < m; ++i) v += y(i) * Q[i];
                v /= v.norm();
                const Eigen::VectorXd r = lead * v - value * metric_apply(v);
                const double resid = r.norm() / lead_scale;
                best_resid = std::min(best_resid, resid);
                if (resid <= opts.tol) {
                    EigenResult out;
                    out.value = value;
                    out.vector = std::move(v);
                    out.iterations = total_ops;
                    out.residual_norm = resid;
                    return out;
                }
                if (subspace_exhausted || m == cap) {
                    // restart from the best Ritz vector; a tiny deterministic
                    // perturbation reopens an exhausted subspace
                    v0 = v;
                    if (subspace_exhausted)
                        for (int i = 0; i < n; ++i) v0[i] += (i % 2 ? 1e-8 : -1e-8);
                    break;
                }
            }
            if (k + 1 < cap) {
                Q.push_back(w / beta);
                Z.push_back(metric ? Eigen::VectorXd(mw / beta) : Q.back());
            }
        }
    }
}

void normalize_result(EigenResult& res, double cell_measure) {
    // unit discrete L²: cell_measure · Σ v² = 1
    res.vector /= std::sqrt(cell_measure) * res.vector.norm();
    if (res.vector.sum() < 0.0) res.vector = -res.vector;
}

}  // namespace

EigenResult smallest_eigen_sparse(const SparseMat& A, const SolveOptions& opts) {
    if (A.rows() != A.cols()) throw std::invalid_argument("smallest_eigen_sparse: square matrix required");
    return lanczos_smallest(A, nullptr, opts);
}

EigenResult smallest_pencil_sparse(const SparseMat& B, const SparseMat& A,
                                   const SolveOptions& opts) {
    if (B.rows() != B.cols() || A.rows() != A.cols() || B.rows() != A.rows())
        throw std::invalid_argument("smallest_pencil_sparse: matching square matrices required");
    return lanczos_smallest(B, &A, opts);
}

EigenResult dirichlet_lambda(const DiscreteDomain& dom, const SolveOptions& opts) {
    EigenResult res = smallest_eigen_sparse(laplacian_matrix(dom), opts);
    res.h = dom.h;
    normalize_result(res, dom.h * dom.h);
    return res;
}

EigenResult buckling_lambda(const DiscreteDomain& dom, const SolveOptions& opts) {
    if (dom.h > min_width(dom.polygon) / 16.0 * (1.0 + 1e-12))
        throw TooCoarse("buckling_lambda: spacing exceeds min_width/16");
    EigenResult res = smallest_pencil_sparse(biharmonic_matrix(dom), laplacian_matrix(dom), opts);
    res.h = dom.h;
    normalize_result(res, dom.h * dom.h);
    return res;
}

EigenResult interval_buckling(int n_cells, double length) {
    const auto forms = make_clamped_interval_forms<double>(n_cells, length);
    const auto pair = smallest_dense_pencil<double>(forms.bending, forms.stiffness);
    EigenResult res;
    res.value = pair.value;
    res.vector = pair.vector;
    res.iterations = 1;
    res.h = forms.spacing;
    normalize_result(res, forms.spacing);
    const double scale = forms.bending.cwiseAbs().rowwise().sum().maxCoeff();
    res.residual_norm = (forms.bending * res.vector - res.value * forms.stiffness * res.vector).norm() /
                        (scale * res.vector.norm());
    return res;
}

static StudiedValue study_impl(const ConvexPolygon& poly, EigenKind which,
                               const std::vector<double>& levels, const SolveOptions& opts) {
    if (levels.size() < 3)
        throw std::invalid_argument("refine_study: at least 3 levels required");
    for (size_t i = 0; i + 1 < levels.size(); ++i)
        if (!(levels[i] > levels[i + 1]))
            throw std::invalid_argument("refine_study: levels must be strictly decreasing");
    const double ratio = levels[0] / levels[1];
    for (size_t i = 1; i + 1 < levels.size(); ++i)
        if (std::abs(levels[i] / levels[i + 1] - ratio) > 1e-9 * ratio)
            throw std::invalid_argument("refine_study: levels must share one refinement ratio");

    StudiedValue sv;
    for (size_t i = 0; i < levels.size(); ++i) {
        DiscreteDomain dom = rasterize(poly, levels[i]);
        EigenResult res =
            which == EigenKind::dirichlet ? dirichlet_lambda(dom, opts) : buckling_lambda(dom, opts);
        sv.study.levels.emplace_back(levels[i], res.value);
        if (i + 1 == levels.size()) {
            sv.finest = std::move(res);
            sv.domain = std::move(dom);
        }
    }

    const size_t m = sv.study.levels.size();
    const double vf = sv.study.levels[m - 1].second;
    const double vc = sv.study.levels[m - 2].second;
    sv.study.extrapolated = vf + (vf - vc) / (ratio * ratio - 1.0);
    const double d1 = sv.study.levels[m - 3].second - vc;
    const double d2 = vc - vf;
    sv.study.observed_order = d1 * d2 > 0.0 ? std::log(d1 / d2) / std::log(ratio) : 0.0;
    sv.study.order_suspect = !(sv.study.observed_order >= 1.0);

    sv.signature = polygon_signature(poly);
    sv.error_estimate = std::abs(sv.study.extrapolated - vf);
    return sv;
}

ConvergenceStudy refine_study(const ConvexPolygon& poly, EigenKind which,
                              const std::vector<double>& levels, const SolveOptions& opts) {
    return study_impl(poly, which, levels, opts).study;
}

StudiedValue study_polygon(const ConvexPolygon& poly, EigenKind which,
                           const std::vector<double>& levels, const SolveOptions& opts) {
    return study_impl(poly, which, levels, opts);
}

std::vector<double> level_ladder(const ConvexPolygon& poly, int base_divisor, int levels) {
    if (base_divisor < 1 || levels < 1)
        throw std::invalid_argument("level_ladder: base_divisor and levels must be positive");
    const double w = min_width(poly);
    std::vector<double> out;
    double h = w / base_divisor;
    for (int i = 0; i < levels; ++i, h /= 2.0) out.push_back(h);
    return out;
}

}  // namespace bucklab
