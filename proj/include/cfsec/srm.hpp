// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cfsec/seclm.hpp"

namespace cfsec {

/// Sum-rate maximization benchmark: the leakage-free specialization of the
/// FP machinery. Each iteration rebuilds the intended auxiliaries and applies
/// update_precoders with a zero gradient. Starts from tx_mmse_init, at most
/// i_fp_max iterations, stops when max_k ||dV_k||_F <= eps_fp * sqrt(P_max).
/// `state.objective_trace` holds the sum rate (bits) at the start and after
/// each iteration; the trace sink receives the same value as `objective`.
SolveResult run_srm(const SystemConfig& cfg, const ChannelSet& channels, double p_max,
                    const TraceSink& trace = {});

/// sum_k eta_I[k]
double sum_rate(const MatrixList& precoders, const ChannelSet& channels, double sigma2);

}  // namespace cfsec
