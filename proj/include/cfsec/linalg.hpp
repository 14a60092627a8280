// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace cfsec {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using MatrixList = std::vector<CMatrix>;

namespace linalg {

// Dense products routed through the runtime-dispatched kernels. Eigen stores
// column-major, so every column is a contiguous complex vector.
CMatrix mul(const CMatrix& a, const CMatrix& b);     // a * b
CMatrix mul_ah(const CMatrix& a, const CMatrix& b);  // a^H * b
CMatrix mul_bh(const CMatrix& a, const CMatrix& b);  // a * b^H

/// a * a^H
inline CMatrix gram(const CMatrix& a) { return mul_bh(a, a); }

/// Squared Frobenius norm.
double frob2(const CMatrix& a);

/// (a + a^H) / 2
CMatrix hermitian_part(const CMatrix& a);

/// ln det(a) for Hermitian positive-definite a, via Cholesky.
/// Throws NumericError when the factorization fails.
double logdet_pd(const CMatrix& a);

/// a^{-1} b for Hermitian positive-definite a.
CMatrix solve_pd(const CMatrix& a, const CMatrix& b);

/// Hermitian PSD square root. Eigenvalues in [-tol * max(1, |lambda|max), 0)
/// are clamped to zero; anything more negative throws NumericError.
CMatrix sqrtm_psd(const CMatrix& a, double tol = 1e-10);

double min_eigenvalue(const CMatrix& hermitian);

/// Frobenius distance between a and a^H.
double hermitian_defect(const CMatrix& a);

}  // namespace linalg
}  // namespace cfsec
