// SPDX-License-Identifier: Apache-2.0
#include "cfsec/srm.hpp"

#include <algorithm>
#include <cmath>

#include "cfsec/complexity.hpp"
#include "cfsec/mmse.hpp"

namespace cfsec {

double sum_rate(const MatrixList& precoders, const ChannelSet& channels, double sigma2) {
  const MatrixList gramians = gramians_of(precoders);
  double total = 0.0;
  for (std::size_t k = 0; k < channels.num_ues; ++k) {
    total += intended_rate(k, gramians, channels, sigma2);
  }
  return total;
}

SolveResult run_srm(const SystemConfig& cfg, const ChannelSet& channels, double p_max,
                    const TraceSink& trace) {
  const double sigma2 = cfg.sigma2_w();
  const double scale = std::sqrt(p_max);
  MatrixList v = tx_mmse_init(channels, sigma2, p_max);

  FpState state;
  state.objective_trace.push_back(sum_rate(v, channels, sigma2));
  if (trace) {
    trace({0, 0, state.objective_trace.back(), BeamformerSet::from_precoders(v).total_power(), 0.0,
           0.0});
  }
  for (int fp = 1; fp <= cfg.i_fp_max; ++fp) {
    state.fp_iterations = fp;
    state.intended = build_aux_i(v, channels, sigma2);
    state.previous = v;
    PrecoderUpdate upd = update_precoders(state.intended, channels, {}, p_max, cfg.i_bs_max);
    const double delta = max_precoder_delta(upd.precoders, v);
    v = std::move(upd.precoders);
    ++state.ccp_iterations;
    state.bisection_iterations += upd.bisection_iterations;
    state.updates.push_back(
        {fp, 1, upd.mu, upd.power, 1.0, upd.power, delta, upd.bisection_iterations});
    state.objective_trace.push_back(sum_rate(v, channels, sigma2));
    if (trace) {
      trace({fp, 1, state.objective_trace.back(), upd.power, delta, 1.0});
    }
    if (delta <= cfg.eps_fp * scale) {
      state.converged = true;
      break;
    }
  }

  SolveResult result;
  result.beamformers = BeamformerSet::from_precoders(std::move(v));
  attach_rx_mmse(result.beamformers, channels, sigma2);
  const double i_fp = std::max(1, state.fp_iterations);
  const double i_bs = std::max(1.0, state.bisection_iterations / i_fp);
  result.metrics = evaluate(result.beamformers, channels, sigma2,
                            flops_srm(i_fp, i_bs, static_cast<double>(channels.num_ues),
                                      static_cast<double>(channels.tx_antennas()),
                                      static_cast<double>(channels.ue_antennas())));
  result.state = std::move(state);
  return result;
}

}  // namespace cfsec
