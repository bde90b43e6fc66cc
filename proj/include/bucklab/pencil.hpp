#pragma once

#include <Eigen/Dense>

#include "bucklab/errors.hpp"

namespace bucklab {

template <typename Scalar>
struct DensePencilEigen {
    Scalar value;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;
};

/// Smallest eigenpair of the dense symmetric pencil K v = value * G v.
/// G must be positive definite; throws SingularPencil otherwise.
template <typename Scalar>
DensePencilEigen<Scalar> smallest_dense_pencil(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& K,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& G) {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (K.rows() != K.cols() || G.rows() != G.cols() || K.rows() != G.rows())
        throw std::invalid_argument("smallest_dense_pencil: shape mismatch");

    Eigen::LLT<Matrix> llt(G);
    if (llt.info() != Eigen::Success)
        throw SingularPencil("denominator form is not positive definite");

    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(K, G);
    if (solver.info() != Eigen::Success)
        throw SingularPencil("generalized eigensolver failed");

    DensePencilEigen<Scalar> out;
    out.value = solver.eigenvalues()(0);  // ascending order
    out.vector = solver.eigenvectors().col(0);
    return out;
}

}  // namespace bucklab
