// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cfsec/channel.hpp"
#include "cfsec/config.hpp"
#include "cfsec/linalg.hpp"
#include "cfsec/rates.hpp"

namespace cfsec {

// Leakage-minimizing precoder design by fractional programming (Lagrangian
// dual transform + quadratic transform) with the convex leakage part handled
// by a convex-concave procedure.
//
// For a link with channel H, own precoder V, full receive covariance
// M(V) = sum_j H V_j V_j^H H^H + sigma2 I and interference-plus-noise E:
//
//   LDT:  ln|I+G| - Tr G + Tr((I+G) (HV)^H M(V)^{-1} (HV)),   G = (HV)^H E^{-1} (HV)
//   QT:   ln|I+G| - Tr G + Tr((I+G) (X + X^H)) - Tr((I+G) Y^H M(V) Y),
//         X = (HV)^H Y,  Y = M^{-1} (HV)
//
// Both equal ln|I + E^{-1} H V V^H H^H| when G and Y are taken at the
// current point. Surrogate values are reported in bits (divided by ln 2).
//
// Leakage links use H = H_e for the worst eavesdropper e of user k, with
// M_L summing over all users except e and E_{k,e} over all except k and e.

/// Intended-link auxiliaries at one expansion point, one entry per user.
struct IntendedAux {
  MatrixList cov;    // M_I[k], M x M
  MatrixList gamma;  // Gamma_I[k], M x M Hermitian PSD
  MatrixList y;      // Y_I[k] = M_I[k]^{-1} H_k V_k
};

/// Leakage-link auxiliaries. Empty when K = 1.
struct LeakageAux {
  std::vector<std::size_t> eavesdropper;  // e~_k
  MatrixList cov;                         // M_L[k]
  MatrixList gamma;                       // Gamma_L[k]
  MatrixList y;                           // Y_L[k]

  bool empty() const noexcept { return eavesdropper.empty(); }
};

IntendedAux build_aux_i(const MatrixList& precoders, const ChannelSet& channels, double sigma2);

/// Throws DomainError if an eavesdropper index equals its user index.
LeakageAux build_aux_l(const MatrixList& precoders, const std::vector<std::size_t>& eavesdroppers,
                       const ChannelSet& channels, double sigma2);

/// e~_k for every user at the given precoders; empty when K = 1.
std::vector<std::size_t> worst_eavesdroppers(const MatrixList& precoders,
                                             const ChannelSet& channels, double sigma2);

// Surrogate rates (bits) of user k at precoders V with frozen auxiliaries.
double ldt_intended(std::size_t k, const MatrixList& precoders, const ChannelSet& channels,
                    double sigma2, const IntendedAux& aux);
double ldt_leakage(std::size_t k, const MatrixList& precoders, const ChannelSet& channels,
                   double sigma2, const LeakageAux& aux);
double qt_intended(std::size_t k, const MatrixList& precoders, const ChannelSet& channels,
                   double sigma2, const IntendedAux& aux);
double qt_leakage(std::size_t k, const MatrixList& precoders, const ChannelSet& channels,
                  double sigma2, const LeakageAux& aux);

/// Gradient (d/dRe V_k + j d/dIm V_k) of sum_k qt_leakage(k) with frozen
/// auxiliaries, one N x M matrix per user:
///   (2 A_k (I + Gamma_L[k]) - 2 sum_{k' : e~_k' != k} B_k' V_k) / ln 2,
///   A_k = H_{e~_k}^H Y_L[k],  B_k = A_k (I + Gamma_L[k]) A_k^H.
/// All zeros when `aux` is empty.
MatrixList leakage_gradient(const MatrixList& precoders, const ChannelSet& channels,
                            const LeakageAux& aux);

struct PrecoderUpdate {
  MatrixList precoders;
  double mu = 0.0;
  double power = 0.0;
  int bisection_iterations = 0;
};

/// Closed-form maximizer of the CCP surrogate
///   V_k = (mu I + Q)^{-1} (H_k^H Y_I[k] (I + Gamma_I[k]) - (ln 2 / 2) grad_k),
///   Q = sum_k H_k^H Y_I[k] (I + Gamma_I[k]) Y_I[k]^H H_k,
/// with one shared mu >= 0 found by bisection so that sum_k ||V_k||^2 <= P_max
/// (equality when the mu = 0 solution is infeasible). Bisection stops when the
/// power bracket is within 1e-6 P_max or after `max_bisection` steps; the
/// feasible end of the bracket is returned. An empty `gradient` means zero.
PrecoderUpdate update_precoders(const IntendedAux& aux, const ChannelSet& channels,
                                const MatrixList& gradient, double p_max, int max_bisection);

struct UpdateRecord {
  int fp_iteration = 0;
  int ccp_iteration = 0;
  double mu = 0.0;
  double power = 0.0;          // of the closed-form candidate
  double step = 1.0;           // fraction of the candidate step taken
  double iterate_power = 0.0;  // of the accepted iterate
  double max_delta = 0.0;
  int bisection_iterations = 0;
};

/// Largest step t in {1, 1/2, ..., 2^-max_halvings} such that the relaxed
/// objective at V + t (candidate - V) is not below its value at V; 0 when
/// none qualifies.
double safeguarded_step(const MatrixList& current, const MatrixList& candidate,
                        const ChannelSet& channels, double sigma2, int max_halvings);

struct FpState {
  IntendedAux intended;
  LeakageAux leakage;
  std::vector<std::size_t> eavesdroppers;
  MatrixList previous;
  int fp_iterations = 0;
  int ccp_iterations = 0;  // total over all outer iterations
  int bisection_iterations = 0;
  /// Relaxed objective sum_k (eta_I - max_e eta_L) at the initial point and
  /// after every outer iteration.
  std::vector<double> objective_trace;
  std::vector<UpdateRecord> updates;
  bool converged = false;
};

/// One line of the optional per-iteration trace.
struct IterationRecord {
  int fp_iteration = 0;
  int ccp_iteration = 0;
  double objective = 0.0;
  double power = 0.0;
  double max_delta = 0.0;
  double step = 1.0;
};
using TraceSink = std::function<void(const IterationRecord&)>;

struct SolveResult {
  BeamformerSet beamformers;
  FpState state;
  MetricsRecord metrics;
};

/// max_k ||a_k - b_k||_F
double max_precoder_delta(const MatrixList& a, const MatrixList& b);

/// Nested FP / CCP iteration started from tx_mmse_init. Outer loop refreshes
/// e~ and the intended auxiliaries; the inner loop rebuilds the leakage
/// auxiliaries and gradient and applies update_precoders, moving toward the
/// candidate by safeguarded_step unless cfg.ccp_step is plain. Each loop exits when
/// max_k ||V_k - V_k^prev||_F <= eps * sqrt(P_max). RX MMSE combiners are
/// attached to the result.
SolveResult run_seclm(const SystemConfig& cfg, const ChannelSet& channels, double p_max,
                      const TraceSink& trace = {});

}  // namespace cfsec
