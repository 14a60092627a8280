// SPDX-License-Identifier: Apache-2.0
//
// Generators and brute-force oracles shared by the test binaries. The oracles
// deliberately avoid cfsec::linalg and use plain Eigen arithmetic, explicit
// loops and eigenvalue decompositions.
#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cfsec/channel.hpp"
#include "cfsec/linalg.hpp"
#include "cfsec/rng.hpp"

namespace cfsec::fx {

inline CMatrix random_cmatrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale / std::sqrt(2.0));
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      m(i, j) = cplx(nd(rng), nd(rng));
    }
  }
  return m;
}

/// Random Hermitian PD matrix with eigenvalues >= floor.
inline CMatrix random_pd(Rng& rng, Eigen::Index n, double floor = 0.1) {
  const CMatrix a = random_cmatrix(rng, n, n);
  return a * a.adjoint() + floor * CMatrix::Identity(n, n);
}

/// L x K i.i.d. CN(0, scale^2) blocks of size M x N_t.
inline ChannelSet random_channels(Rng& rng, std::size_t L, std::size_t K, std::size_t M,
                                  std::size_t n_t, double scale = 1.0) {
  std::vector<CMatrix> blocks;
  for (std::size_t i = 0; i < L * K; ++i) {
    blocks.push_back(random_cmatrix(rng, static_cast<Eigen::Index>(M),
                                    static_cast<Eigen::Index>(n_t), scale));
  }
  return ChannelSet::from_blocks(L, K, std::move(blocks));
}

/// K random N x M precoders rescaled to total power `power`.
inline MatrixList random_precoders(Rng& rng, std::size_t K, std::size_t N, std::size_t M,
                                   double power) {
  MatrixList v;
  double total = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    v.push_back(random_cmatrix(rng, static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(M)));
    total += v.back().squaredNorm();
  }
  for (auto& x : v) {
    x *= std::sqrt(power / total);
  }
  return v;
}

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// ---- oracles -------------------------------------------------------------

/// sigma2 I + sum over k' not in `skip` of H F_k' H^H, accumulated entry by entry.
inline CMatrix brute_cov(const CMatrix& h, const MatrixList& gramians, double sigma2,
                         std::vector<std::size_t> skip) {
  const Eigen::Index m = h.rows();
  const Eigen::Index n = h.cols();
  CMatrix out = CMatrix::Zero(m, m);
  for (std::size_t j = 0; j < gramians.size(); ++j) {
    bool skipped = false;
    for (std::size_t s : skip) skipped = skipped || s == j;
    if (skipped) continue;
    for (Eigen::Index r = 0; r < m; ++r)
      for (Eigen::Index c = 0; c < m; ++c)
        for (Eigen::Index p = 0; p < n; ++p)
          for (Eigen::Index q = 0; q < n; ++q)
            out(r, c) += h(r, p) * gramians[j](p, q) * std::conj(h(c, q));
  }
  for (Eigen::Index r = 0; r < m; ++r) out(r, r) += sigma2;
  return out;
}

/// log2 det(I + S E^{-1}) through the generalized eigenvalues of (S, E):
/// sum log2(1 + lambda_i) with lambda the eigenvalues of E^{-1/2} S E^{-1/2}.
inline double brute_rate(const CMatrix& signal, const CMatrix& cov) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(cov);
  const Eigen::VectorXd d = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const CMatrix w = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
  const CMatrix x = w * signal * w;
  Eigen::SelfAdjointEigenSolver<CMatrix> ex((x + x.adjoint()) / 2.0);
  double r = 0.0;
  for (Eigen::Index i = 0; i < ex.eigenvalues().size(); ++i) {
    r += std::log2(1.0 + std::max(0.0, ex.eigenvalues()(i)));
  }
  return r;
}

inline double brute_intended(std::size_t k, const MatrixList& f, const ChannelSet& ch,
                             double sigma2) {
  const CMatrix& h = ch.effective[k];
  return brute_rate(h * f[k] * h.adjoint(), brute_cov(h, f, sigma2, {k}));
}

inline double brute_leakage(std::size_t k, std::size_t e, const MatrixList& f,
                            const ChannelSet& ch, double sigma2) {
  const CMatrix& h = ch.effective[e];
  return brute_rate(h * f[k] * h.adjoint(), brute_cov(h, f, sigma2, {k, e}));
}

inline MatrixList plain_gramians(const MatrixList& v) {
  MatrixList f;
  for (const auto& x : v) f.push_back(x * x.adjoint());
  return f;
}

inline double total_power(const MatrixList& v) {
  double p = 0.0;
  for (const auto& x : v) p += x.squaredNorm();
  return p;
}

}  // namespace cfsec::fx
