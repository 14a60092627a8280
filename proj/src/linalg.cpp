// SPDX-License-Identifier: Apache-2.0
#include "cfsec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfsec/errors.hpp"
#include "cfsec/kernels.hpp"

namespace cfsec::linalg {

namespace {

void require(bool ok, const char* what) {
  if (!ok) {
    throw DomainError(std::string("shape mismatch in ") + what);
  }
}

}  // namespace

CMatrix mul(const CMatrix& a, const CMatrix& b) {
  require(a.cols() == b.rows(), "mul");
  CMatrix c = CMatrix::Zero(a.rows(), b.cols());
  const auto& k = kernels::active();
  const auto m = static_cast<std::size_t>(a.rows());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    for (Eigen::Index p = 0; p < a.cols(); ++p) {
      k.axpy(m, b(p, j), a.col(p).data(), c.col(j).data());
    }
  }
  return c;
}

CMatrix mul_ah(const CMatrix& a, const CMatrix& b) {
  require(a.rows() == b.rows(), "mul_ah");
  CMatrix c(a.cols(), b.cols());
  const auto& k = kernels::active();
  const auto n = static_cast<std::size_t>(a.rows());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
      c(i, j) = k.dotc(n, a.col(i).data(), b.col(j).data());
    }
  }
  return c;
}

CMatrix mul_bh(const CMatrix& a, const CMatrix& b) {
  require(a.cols() == b.cols(), "mul_bh");
  CMatrix c = CMatrix::Zero(a.rows(), b.rows());
  const auto& k = kernels::active();
  const auto m = static_cast<std::size_t>(a.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    for (Eigen::Index p = 0; p < a.cols(); ++p) {
      k.axpy(m, std::conj(b(j, p)), a.col(p).data(), c.col(j).data());
    }
  }
  return c;
}

double frob2(const CMatrix& a) {
  return kernels::norm2(static_cast<std::size_t>(a.size()), a.data());
}

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

double logdet_pd(const CMatrix& a) {
  Eigen::LLT<CMatrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericError("Cholesky failed: matrix is not positive definite");
  }
  const CMatrix& l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double d = l(i, i).real();
    if (!(d > 0.0)) {
      throw NumericError("Cholesky produced a non-positive pivot");
    }
    acc += std::log(d);
  }
  return 2.0 * acc;
}

CMatrix solve_pd(const CMatrix& a, const CMatrix& b) {
  Eigen::LLT<CMatrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericError("Cholesky failed: matrix is not positive definite");
  }
  return llt.solve(b);
}

CMatrix sqrtm_psd(const CMatrix& a, double tol) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
  if (es.info() != Eigen::Success) {
    throw NumericError("eigendecomposition failed");
  }
  Eigen::VectorXd lambda = es.eigenvalues();
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -tol * scale) {
      throw NumericError("matrix is not positive semidefinite (eigenvalue " +
                         std::to_string(lambda(i)) + ")");
    }
    lambda(i) = std::sqrt(std::max(lambda(i), 0.0));
  }
  const CMatrix& u = es.eigenvectors();
  return mul_bh(u * lambda.asDiagonal(), u);
}

double min_eigenvalue(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(hermitian), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double hermitian_defect(const CMatrix& a) { return (a - a.adjoint()).norm(); }

}  // namespace cfsec::linalg
