// SPDX-License-Identifier: Apache-2.0
#include "cfsec/mmse.hpp"

#include <cmath>

#include "cfsec/errors.hpp"

namespace cfsec {

MatrixList tx_mmse_init(const ChannelSet& channels, double sigma2, double p_max) {
  if (!(p_max > 0.0)) {
    throw DomainError("tx_mmse_init: P_max must be > 0");
  }
  const std::size_t K = channels.num_ues;
  const auto n = static_cast<Eigen::Index>(channels.tx_antennas());
  CMatrix regularized = sigma2 * CMatrix::Identity(n, n);
  for (const auto& h : channels.effective) {
    regularized += linalg::mul_ah(h, h);
  }
  regularized = linalg::hermitian_part(regularized);
  Eigen::LLT<CMatrix> llt(regularized);
  if (llt.info() != Eigen::Success) {
    throw NumericError("tx_mmse_init: regularized Gram matrix is not positive definite");
  }
  const double per_user = std::sqrt(p_max / static_cast<double>(K));
  MatrixList precoders;
  precoders.reserve(K);
  for (const auto& h : channels.effective) {
    CMatrix a = llt.solve(CMatrix(h.adjoint()));
    const double norm = std::sqrt(linalg::frob2(a));
    if (norm > 0.0) {
      a *= per_user / norm;
    }
    precoders.push_back(std::move(a));
  }
  return precoders;
}

CMatrix rx_mmse(std::size_t k, const MatrixList& precoders, const ChannelSet& channels,
                double sigma2) {
  const CMatrix& h = channels.effective[k];
  const auto m = h.rows();
  CMatrix received = sigma2 * CMatrix::Identity(m, m);
  for (const auto& v : precoders) {
    received += linalg::gram(linalg::mul(h, v));
  }
  const CMatrix x = linalg::solve_pd(linalg::hermitian_part(received), linalg::mul(h, precoders[k]));
  return x.adjoint();
}

void attach_rx_mmse(BeamformerSet& beamformers, const ChannelSet& channels, double sigma2) {
  beamformers.combiners.clear();
  for (std::size_t k = 0; k < beamformers.precoders.size(); ++k) {
    beamformers.combiners.push_back(rx_mmse(k, beamformers.precoders, channels, sigma2));
  }
}

}  // namespace cfsec
