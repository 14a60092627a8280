// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cfsec/channel.hpp"
#include "cfsec/linalg.hpp"
#include "cfsec/rates.hpp"

namespace cfsec {

/// Regularized MMSE transmit precoders
///   V_k = sqrt(P/K) A_k / ||A_k||_F,  A_k = (sum_k' H_k'^H H_k' + sigma2 I_N)^{-1} H_k^H.
/// Every precoder carries P/K, so the total is exactly P.
MatrixList tx_mmse_init(const ChannelSet& channels, double sigma2, double p_max);

/// MMSE receive combiner U_k = V_k^H H_k^H (H_k F H_k^H + sigma2 I_M)^{-1},
/// F = sum_k' V_k' V_k'^H.
CMatrix rx_mmse(std::size_t k, const MatrixList& precoders, const ChannelSet& channels,
                double sigma2);

/// Fills `combiners` via rx_mmse for every user.
void attach_rx_mmse(BeamformerSet& beamformers, const ChannelSet& channels, double sigma2);

}  // namespace cfsec
