#pragma once

#include <Eigen/Dense>
#include <complex>

namespace floqlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Largest entrywise magnitude.
inline double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// max |A - B| entrywise.
inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    return max_abs(a - b);
}

/// max |U U† - 1| entrywise; zero for a unitary matrix.
inline double unitarity_residual(const CMatrix& u) {
    return max_abs(u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols()));
}

/// max |A - A†| entrywise.
inline double hermiticity_residual(const CMatrix& a) {
    return max_abs_diff(a, a.adjoint());
}

/// exp(-i theta H) for Hermitian H, via eigendecomposition. Exactly unitary
/// up to the accuracy of the eigensolver.
inline CMatrix unitary_exp(const CMatrix& h, double theta) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    CVector phases = (Complex(0, -theta) * es.eigenvalues().cast<Complex>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace floqlab
