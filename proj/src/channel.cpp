// SPDX-License-Identifier: Apache-2.0
#include "cfsec/channel.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "cfsec/errors.hpp"

namespace cfsec {

namespace {

constexpr std::size_t kQuadraturePoints = 64;
constexpr double kPi = std::numbers::pi;

cplx scattering_entry(double delta, double mu, double sigma_phi, double spacing_wl,
                      CorrelationMode mode) {
  const double k = 2.0 * kPi * spacing_wl * delta;
  if (sigma_phi == 0.0) {
    return std::polar(1.0, k * std::sin(mu));
  }
  if (mode == CorrelationMode::closed_form) {
    const double spread = sigma_phi * k * std::cos(mu);
    return std::polar(std::exp(-0.5 * spread * spread), k * std::sin(mu));
  }
  const auto& rule = gauss_hermite(kQuadraturePoints);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double phi = mu + std::numbers::sqrt2 * sigma_phi * rule.nodes[i];
    acc += rule.weights[i] * std::polar(1.0, k * std::sin(phi));
  }
  return acc / std::sqrt(kPi);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ChannelSet ChannelSet::from_blocks(std::size_t num_aps, std::size_t num_ues,
                                   std::vector<CMatrix> blocks) {
  if (blocks.size() != num_aps * num_ues || blocks.empty()) {
    throw DomainError("from_blocks: expected L*K blocks");
  }
  ChannelSet set;
  set.num_aps = num_aps;
  set.num_ues = num_ues;
  set.blocks = std::move(blocks);
  const Eigen::Index m = set.blocks[0].rows();
  const Eigen::Index nt = set.blocks[0].cols();
  set.effective.reserve(num_ues);
  for (std::size_t k = 0; k < num_ues; ++k) {
    CMatrix h(m, nt * static_cast<Eigen::Index>(num_aps));
    for (std::size_t l = 0; l < num_aps; ++l) {
      const CMatrix& b = set.block(l, k);
      if (b.rows() != m || b.cols() != nt) {
        throw DomainError("from_blocks: inconsistent block shapes");
      }
      h.middleCols(static_cast<Eigen::Index>(l) * nt, nt) = b;
    }
    set.effective.push_back(std::move(h));
  }
  return set;
}

ChannelSet ChannelSet::from_effective(std::vector<CMatrix> effective) {
  const std::size_t K = effective.size();
  return from_blocks(1, K, std::move(effective));
}

const GaussHermiteRule& gauss_hermite(std::size_t points) {
  static std::mutex mu;
  static std::map<std::size_t, GaussHermiteRule> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(points); it != cache.end()) {
    return it->second;
  }
  const auto n = static_cast<Eigen::Index>(points);
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) {
    const double b = std::sqrt(static_cast<double>(i) / 2.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  GaussHermiteRule rule;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    rule.nodes.push_back(es.eigenvalues()(i));
    rule.weights.push_back(std::sqrt(kPi) * v0 * v0);
  }
  return cache.emplace(points, std::move(rule)).first->second;
}

CMatrix correlation_matrix(std::size_t n, double mu, double sigma_phi, double spacing_wl,
                           double beta, CorrelationMode mode) {
  if (n < 1 || sigma_phi < 0.0 || !(beta > 0.0)) {
    throw DomainError("correlation_matrix: need n >= 1, sigma_phi >= 0, beta > 0");
  }
  const auto size = static_cast<Eigen::Index>(n);
  CMatrix r(size, size);
  for (Eigen::Index q = 0; q < size; ++q) {
    r(q, q) = cplx(beta, 0.0);
    for (Eigen::Index m = q + 1; m < size; ++m) {
      const cplx v = beta * scattering_entry(static_cast<double>(q - m), mu, sigma_phi,
                                             spacing_wl, mode);
      r(q, m) = v;
      r(m, q) = std::conj(v);
    }
  }
  return r;
}

CMatrix synth_channel(const CorrelationPair& pair, Rng& rng) {
  const CMatrix rx_root = linalg::sqrtm_psd(pair.rx);
  const CMatrix tx_root = linalg::sqrtm_psd(pair.tx);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  CMatrix g(pair.rx.rows(), pair.tx.rows());
  // Fill column by column so the draw order is fixed.
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return linalg::mul(linalg::mul(rx_root, g), tx_root.transpose());
}

ChannelSet build_channel_set(const SystemConfig& cfg, const Topology& topo, Rng& rng) {
  const std::size_t L = cfg.num_aps;
  const std::size_t K = cfg.num_ues;
  const double sigma_phi = cfg.angular_std_deg * kPi / 180.0;
  const std::uint64_t base = rng();
  std::vector<CMatrix> blocks;
  std::vector<CorrelationPair> pairs;
  blocks.reserve(L * K);
  pairs.reserve(L * K);
  for (std::size_t l = 0; l < L; ++l) {
    for (std::size_t k = 0; k < K; ++k) {
      CorrelationPair pair;
      pair.beta = large_scale_gain(topo.distances(static_cast<Eigen::Index>(l),
                                                  static_cast<Eigen::Index>(k)),
                                   cfg);
      pair.mu_tx = bearing(topo.ap_positions[l], topo.ue_positions[k]);
      pair.mu_rx = bearing(topo.ue_positions[k], topo.ap_positions[l]);
      pair.sigma_phi = sigma_phi;
      pair.rx = correlation_matrix(cfg.ue_antennas, pair.mu_rx, sigma_phi,
                                   cfg.antenna_spacing_wl, pair.beta, cfg.correlation_mode);
      pair.tx = correlation_matrix(cfg.ap_antennas, pair.mu_tx, sigma_phi,
                                   cfg.antenna_spacing_wl, 1.0, cfg.correlation_mode);
      Rng stream = make_stream(base, {l, k});
      blocks.push_back(synth_channel(pair, stream));
      pairs.push_back(std::move(pair));
    }
  }
  ChannelSet set = ChannelSet::from_blocks(L, K, std::move(blocks));
  set.pairs = std::move(pairs);
  return set;
}

std::uint64_t channel_checksum(const ChannelSet& channels) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& b : channels.blocks) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(b.data());
    const std::size_t len = static_cast<std::size_t>(b.size()) * sizeof(cplx);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

void write_channel_dump_header(std::ostream& out, const SystemConfig& cfg) {
  out << "# cfsec channel dump v1 L=" << cfg.num_aps << " K=" << cfg.num_ues
      << " M=" << cfg.ue_antennas << " N_t=" << cfg.ap_antennas
      << " sigma2_w=" << fmt17(cfg.sigma2_w()) << "\n";
}

void write_channel_dump(std::ostream& out, std::size_t drop, const ChannelSet& channels) {
  for (std::size_t l = 0; l < channels.num_aps; ++l) {
    for (std::size_t k = 0; k < channels.num_ues; ++k) {
      const CMatrix& b = channels.block(l, k);
      out << drop << ',' << l << ',' << k << ',' << b.rows() << ',' << b.cols();
      for (Eigen::Index i = 0; i < b.rows(); ++i) {
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
          out << ',' << fmt17(b(i, j).real()) << ',' << fmt17(b(i, j).imag());
        }
      }
      out << '\n';
    }
  }
}

std::vector<ChannelSet> read_channel_dump(std::istream& in) {
  struct Rec {
    std::size_t l, k;
    CMatrix block;
  };
  std::map<std::size_t, std::vector<Rec>> by_drop;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::istringstream ls(line);
    std::string field;
    std::vector<double> v;
    while (std::getline(ls, field, ',')) {
      v.push_back(std::stod(field));
    }
    if (v.size() < 5) {
      throw NumericError("channel dump: short record");
    }
    const auto rows = static_cast<Eigen::Index>(v[3]);
    const auto cols = static_cast<Eigen::Index>(v[4]);
    if (v.size() != 5 + static_cast<std::size_t>(2 * rows * cols)) {
      throw NumericError("channel dump: record length does not match shape");
    }
    CMatrix b(rows, cols);
    std::size_t p = 5;
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j, p += 2) {
        b(i, j) = cplx(v[p], v[p + 1]);
      }
    }
    by_drop[static_cast<std::size_t>(v[0])].push_back(
        {static_cast<std::size_t>(v[1]), static_cast<std::size_t>(v[2]), std::move(b)});
  }
  std::vector<ChannelSet> out;
  for (auto& [drop, recs] : by_drop) {
    std::size_t L = 0;
    std::size_t K = 0;
    for (const auto& r : recs) {
      L = std::max(L, r.l + 1);
      K = std::max(K, r.k + 1);
    }
    std::vector<CMatrix> blocks(L * K);
    for (auto& r : recs) {
      blocks[r.l * K + r.k] = std::move(r.block);
    }
    out.push_back(ChannelSet::from_blocks(L, K, std::move(blocks)));
  }
  return out;
}

}  // namespace cfsec
