// SPDX-License-Identifier: Apache-2.0
#include "cfsec/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cfsec/errors.hpp"

namespace cfsec {

namespace {

CMatrix sandwich(const CMatrix& h, const CMatrix& f) {
  return linalg::mul_bh(linalg::mul(h, f), h);
}

CMatrix noise(const ChannelSet& channels, double sigma2) {
  const auto m = static_cast<Eigen::Index>(channels.ue_antennas());
  return sigma2 * CMatrix::Identity(m, m);
}

/// log2 det(I + S E^{-1}) = log2 det(E + S) - log2 det(E), both PD.
double rate_bits(const CMatrix& signal, const CMatrix& interference) {
  const double nats = linalg::logdet_pd(linalg::hermitian_part(interference + signal)) -
                      linalg::logdet_pd(linalg::hermitian_part(interference));
  return std::max(nats / std::numbers::ln2, 0.0);
}

void check_user(std::size_t k, const MatrixList& gramians, const ChannelSet& channels) {
  if (k >= channels.num_ues || gramians.size() != channels.num_ues) {
    throw DomainError("user index or Gramian count does not match the channel set");
  }
}

}  // namespace

BeamformerSet BeamformerSet::from_precoders(MatrixList precoders) {
  BeamformerSet set;
  set.gramians = gramians_of(precoders);
  set.precoders = std::move(precoders);
  return set;
}

double BeamformerSet::total_power() const {
  double p = 0.0;
  for (const auto& v : precoders) {
    p += linalg::frob2(v);
  }
  return p;
}

MatrixList gramians_of(const MatrixList& precoders) {
  MatrixList out;
  out.reserve(precoders.size());
  for (const auto& v : precoders) {
    out.push_back(linalg::gram(v));
  }
  return out;
}

CMatrix interference_cov(std::size_t k, const MatrixList& gramians, const ChannelSet& channels,
                         double sigma2) {
  check_user(k, gramians, channels);
  const CMatrix& h = channels.effective[k];
  CMatrix e = noise(channels, sigma2);
  for (std::size_t j = 0; j < gramians.size(); ++j) {
    if (j != k) {
      e += sandwich(h, gramians[j]);
    }
  }
  return linalg::hermitian_part(e);
}

CMatrix eav_interference_cov(std::size_t k, std::size_t e, const MatrixList& gramians,
                             const ChannelSet& channels, double sigma2) {
  check_user(k, gramians, channels);
  check_user(e, gramians, channels);
  if (e == k) {
    throw DomainError("eavesdropper index must differ from the user index");
  }
  const CMatrix& h = channels.effective[e];
  CMatrix cov = noise(channels, sigma2);
  for (std::size_t j = 0; j < gramians.size(); ++j) {
    if (j != k && j != e) {
      cov += sandwich(h, gramians[j]);
    }
  }
  return linalg::hermitian_part(cov);
}

double intended_rate(std::size_t k, const MatrixList& gramians, const ChannelSet& channels,
                     double sigma2) {
  return rate_bits(sandwich(channels.effective[k], gramians[k]),
                   interference_cov(k, gramians, channels, sigma2));
}

double leakage_rate(std::size_t k, std::size_t e, const MatrixList& gramians,
                    const ChannelSet& channels, double sigma2) {
  const CMatrix cov = eav_interference_cov(k, e, gramians, channels, sigma2);
  return rate_bits(sandwich(channels.effective[e], gramians[k]), cov);
}

Eavesdropper worst_eavesdropper(std::size_t k, const MatrixList& gramians,
                                const ChannelSet& channels, double sigma2) {
  check_user(k, gramians, channels);
  Eavesdropper worst;
  for (std::size_t e = 0; e < channels.num_ues; ++e) {
    if (e == k) {
      continue;
    }
    const double r = leakage_rate(k, e, gramians, channels, sigma2);
    if (!worst.index || r > worst.rate) {
      worst.index = e;
      worst.rate = r;
    }
  }
  return worst;
}

double relaxed_objective(const MatrixList& gramians, const ChannelSet& channels, double sigma2) {
  double total = 0.0;
  for (std::size_t k = 0; k < channels.num_ues; ++k) {
    total += intended_rate(k, gramians, channels, sigma2) -
             worst_eavesdropper(k, gramians, channels, sigma2).rate;
  }
  return total;
}

MetricsRecord evaluate(const BeamformerSet& beamformers, const ChannelSet& channels,
                       double sigma2, double flops) {
  const MatrixList gramians = beamformers.gramians.size() == beamformers.precoders.size() &&
                                      !beamformers.gramians.empty()
                                  ? beamformers.gramians
                                  : gramians_of(beamformers.precoders);
  const std::size_t K = channels.num_ues;
  MetricsRecord rec;
  rec.eta_i.resize(K);
  rec.eta_l_worst.resize(K);
  rec.e_worst.resize(K);
  rec.secrecy.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    rec.eta_i[k] = intended_rate(k, gramians, channels, sigma2);
    const Eavesdropper worst = worst_eavesdropper(k, gramians, channels, sigma2);
    rec.eta_l_worst[k] = worst.rate;
    rec.e_worst[k] = worst.index ? static_cast<int>(*worst.index) : -1;
    rec.secrecy[k] = std::max(rec.eta_i[k] - rec.eta_l_worst[k], 0.0);
    rec.sum_secrecy += rec.secrecy[k];
    rec.sum_rate += rec.eta_i[k];
    rec.sum_leakage += rec.eta_l_worst[k];
  }
  for (const auto& f : gramians) {
    rec.power_used += f.trace().real();
  }
  rec.flops = flops;
  return rec;
}

}  // namespace cfsec
