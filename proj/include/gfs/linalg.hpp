#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace gfs {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

double max_abs(const CMatrix& m);

// Eigenvalues (ascending) of a dense Hermitian matrix.
RVector hermitian_eigenvalues(const CMatrix& m);

// Half-bandwidth of a square matrix: max |i - j| over entries with |m_ij| > 0.
int bandwidth(const CMatrix& m);

// Eigenvalues (ascending) of a Hermitian matrix with half-bandwidth kd,
// via LAPACK's band reduction. Entries outside the band are ignored.
RVector hermitian_band_eigenvalues(const CMatrix& m, int kd);

}  // namespace gfs
