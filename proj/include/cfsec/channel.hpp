// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cfsec/config.hpp"
#include "cfsec/linalg.hpp"
#include "cfsec/rng.hpp"
#include "cfsec/topology.hpp"

namespace cfsec {

/// RX/TX spatial correlation of one AP-UE link. `rx` carries the gain beta;
/// `tx` has unit diagonal, so E|H(q,m)|^2 = beta.
struct CorrelationPair {
  CMatrix rx;  // M x M
  CMatrix tx;  // N_t x N_t
  double beta = 1.0;
  double mu_tx = 0.0;
  double mu_rx = 0.0;
  double sigma_phi = 0.0;
};

struct ChannelSet {
  std::size_t num_aps = 0;
  std::size_t num_ues = 0;
  std::vector<CMatrix> blocks;           // (l, k) at l * K + k, each M x N_t
  std::vector<CMatrix> effective;        // K entries, M x N
  std::vector<CorrelationPair> pairs;    // same indexing as blocks; may be empty

  const CMatrix& block(std::size_t l, std::size_t k) const { return blocks[l * num_ues + k]; }
  std::size_t ue_antennas() const { return effective.empty() ? 0 : static_cast<std::size_t>(effective[0].rows()); }
  std::size_t tx_antennas() const { return effective.empty() ? 0 : static_cast<std::size_t>(effective[0].cols()); }

  /// Builds `effective` by concatenating blocks [H_{1,k} ... H_{L,k}].
  static ChannelSet from_blocks(std::size_t num_aps, std::size_t num_ues, std::vector<CMatrix> blocks);
  /// Wraps already-concatenated per-UE channels as a single-AP set.
  static ChannelSet from_effective(std::vector<CMatrix> effective);
};

/// Gauss-Hermite rule for weight e^{-x^2} (Golub-Welsch).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussHermiteRule& gauss_hermite(std::size_t points);

/// n x n local-scattering correlation:
///   beta * E[ exp(j 2 pi d (q - m) sin(phi)) ],  phi ~ N(mu, sigma_phi^2).
/// Quadrature mode integrates with 64-point Gauss-Hermite; closed_form uses the
/// small-angle approximation
///   beta * exp(j 2 pi d (q-m) sin mu) * exp(-(sigma_phi 2 pi d (q-m) cos mu)^2 / 2),
/// which is only accurate for sigma_phi of a degree or so.
CMatrix correlation_matrix(std::size_t n, double mu, double sigma_phi, double spacing_wl,
                           double beta, CorrelationMode mode = CorrelationMode::quadrature);

/// H = R^{1/2} G (T^{1/2})^T with G i.i.d. CN(0, 1).
CMatrix synth_channel(const CorrelationPair& pair, Rng& rng);

/// One block per (AP, UE). Each block is drawn from its own stream derived
/// from a single draw of `rng`, so blocks can be synthesized in any order.
ChannelSet build_channel_set(const SystemConfig& cfg, const Topology& topo, Rng& rng);

/// FNV-1a over the raw bytes of every block, in (l, k) order.
std::uint64_t channel_checksum(const ChannelSet& channels);

/// Channel dump: one header comment, then one CSV record per (drop, l, k):
///   drop,l,k,rows,cols,re(0,0),im(0,0),re(0,1),im(0,1),...   (row-major)
void write_channel_dump_header(std::ostream& out, const SystemConfig& cfg);
void write_channel_dump(std::ostream& out, std::size_t drop, const ChannelSet& channels);

/// Parses records written by write_channel_dump into per-drop channel sets.
std::vector<ChannelSet> read_channel_dump(std::istream& in);

}  // namespace cfsec
