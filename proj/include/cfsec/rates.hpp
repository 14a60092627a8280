// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cfsec/channel.hpp"
#include "cfsec/linalg.hpp"

namespace cfsec {

/// Per-user TX precoders V_k (N x M), optional RX combiners U_k (M x M) and
/// Gramians F_k = V_k V_k^H.
struct BeamformerSet {
  MatrixList precoders;
  MatrixList combiners;
  MatrixList gramians;

  static BeamformerSet from_precoders(MatrixList precoders);
  /// sum_k ||V_k||_F^2
  double total_power() const;
};

MatrixList gramians_of(const MatrixList& precoders);

struct MetricsRecord {
  std::vector<double> eta_i;        // intended rate per user, bits/channel-use
  std::vector<double> eta_l_worst;  // worst leakage rate of each user's stream
  std::vector<int> e_worst;         // worst eavesdropper index, -1 when K = 1
  std::vector<double> secrecy;      // max(eta_i - eta_l_worst, 0)
  double sum_secrecy = 0.0;
  double sum_rate = 0.0;
  double sum_leakage = 0.0;
  double power_used = 0.0;
  double flops = 0.0;
};

/// E_k = sum_{k' != k} H_k F_k' H_k^H + sigma2 I
CMatrix interference_cov(std::size_t k, const MatrixList& gramians, const ChannelSet& channels,
                         double sigma2);

/// E_{k,e} = sum_{k' not in {k, e}} H_e F_k' H_e^H + sigma2 I. Throws DomainError for e == k.
CMatrix eav_interference_cov(std::size_t k, std::size_t e, const MatrixList& gramians,
                             const ChannelSet& channels, double sigma2);

/// log2 det(I + H_k F_k H_k^H E_k^{-1})
double intended_rate(std::size_t k, const MatrixList& gramians, const ChannelSet& channels,
                     double sigma2);

/// log2 det(I + H_e F_k H_e^H E_{k,e}^{-1}); rate at which UE e decodes UE k's
/// stream after cancelling its own. Throws DomainError for e == k.
double leakage_rate(std::size_t k, std::size_t e, const MatrixList& gramians,
                    const ChannelSet& channels, double sigma2);

struct Eavesdropper {
  std::optional<std::size_t> index;  // empty when K = 1
  double rate = 0.0;
};

/// argmax_{e != k} leakage_rate(k, e); ties go to the smallest index.
Eavesdropper worst_eavesdropper(std::size_t k, const MatrixList& gramians,
                                const ChannelSet& channels, double sigma2);

/// sum_k (eta_I[k] - max_e eta_L[k, e]), the unclamped secrecy sum.
double relaxed_objective(const MatrixList& gramians, const ChannelSet& channels, double sigma2);

/// Fills every MetricsRecord field from the Gramians (computed from the
/// precoders when absent). Combiners do not influence the result.
MetricsRecord evaluate(const BeamformerSet& beamformers, const ChannelSet& channels,
                       double sigma2, double flops = 0.0);

}  // namespace cfsec
