// SPDX-License-Identifier: Apache-2.0
#include "cfsec/seclm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cfsec/complexity.hpp"
#include "cfsec/errors.hpp"
#include "cfsec/mmse.hpp"

namespace cfsec {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr int kMaxHalvings = 10;

CMatrix identity(Eigen::Index m) { return CMatrix::Identity(m, m); }

/// sigma2 I + sum_{j not excluded} (H V_j)(H V_j)^H
CMatrix receive_cov(const MatrixList& hv, double sigma2, std::size_t skip_a, std::size_t skip_b) {
  const Eigen::Index m = hv.front().rows();
  CMatrix cov = sigma2 * identity(m);
  for (std::size_t j = 0; j < hv.size(); ++j) {
    if (j != skip_a && j != skip_b) {
      cov += linalg::gram(hv[j]);
    }
  }
  return linalg::hermitian_part(cov);
}

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

MatrixList project(const CMatrix& h, const MatrixList& precoders) {
  MatrixList out;
  out.reserve(precoders.size());
  for (const auto& v : precoders) {
    out.push_back(linalg::mul(h, v));
  }
  return out;
}

double multiplier_constant(const CMatrix& gamma) {
  const CMatrix a = identity(gamma.rows()) + gamma;
  return linalg::logdet_pd(linalg::hermitian_part(a)) - gamma.trace().real();
}

/// LDT value in nats for a link with projected own precoder `hv`.
double ldt_nats(const CMatrix& hv, const CMatrix& cov, const CMatrix& gamma) {
  const CMatrix a = identity(gamma.rows()) + gamma;
  const CMatrix ratio = linalg::mul_ah(hv, linalg::solve_pd(cov, hv));
  return multiplier_constant(gamma) + (a * ratio).trace().real();
}

/// QT value in nats.
double qt_nats(const CMatrix& hv, const CMatrix& cov, const CMatrix& gamma, const CMatrix& y) {
  const CMatrix a = identity(gamma.rows()) + gamma;
  const CMatrix x = linalg::mul_ah(hv, y);
  const CMatrix quad = linalg::mul_ah(y, cov * y);
  return multiplier_constant(gamma) + (a * (x + x.adjoint())).trace().real() -
         (a * quad).trace().real();
}

void check_sizes(const MatrixList& precoders, const ChannelSet& channels) {
  if (precoders.size() != channels.num_ues || precoders.empty()) {
    throw DomainError("precoder count does not match the number of users");
  }
}

}  // namespace

IntendedAux build_aux_i(const MatrixList& precoders, const ChannelSet& channels, double sigma2) {
  check_sizes(precoders, channels);
  const std::size_t K = channels.num_ues;
  IntendedAux aux;
  aux.cov.reserve(K);
  aux.gamma.reserve(K);
  aux.y.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    const MatrixList hv = project(channels.effective[k], precoders);
    CMatrix cov = receive_cov(hv, sigma2, kNone, kNone);
    const CMatrix interference = receive_cov(hv, sigma2, k, kNone);
    aux.gamma.push_back(
        linalg::hermitian_part(linalg::mul_ah(hv[k], linalg::solve_pd(interference, hv[k]))));
    aux.y.push_back(linalg::solve_pd(cov, hv[k]));
    aux.cov.push_back(std::move(cov));
  }
  return aux;
}

LeakageAux build_aux_l(const MatrixList& precoders, const std::vector<std::size_t>& eavesdroppers,
                       const ChannelSet& channels, double sigma2) {
  check_sizes(precoders, channels);
  LeakageAux aux;
  if (channels.num_ues < 2) {
    return aux;
  }
  if (eavesdroppers.size() != channels.num_ues) {
    throw DomainError("one eavesdropper index per user is required");
  }
  aux.eavesdropper = eavesdroppers;
  for (std::size_t k = 0; k < channels.num_ues; ++k) {
    const std::size_t e = eavesdroppers[k];
    if (e == k || e >= channels.num_ues) {
      throw DomainError("invalid eavesdropper index");
    }
    const MatrixList hv = project(channels.effective[e], precoders);
    CMatrix cov = receive_cov(hv, sigma2, e, kNone);
    const CMatrix interference = receive_cov(hv, sigma2, k, e);
    aux.gamma.push_back(
        linalg::hermitian_part(linalg::mul_ah(hv[k], linalg::solve_pd(interference, hv[k]))));
    aux.y.push_back(linalg::solve_pd(cov, hv[k]));
    aux.cov.push_back(std::move(cov));
  }
  return aux;
}

std::vector<std::size_t> worst_eavesdroppers(const MatrixList& precoders,
                                             const ChannelSet& channels, double sigma2) {
  std::vector<std::size_t> out;
  if (channels.num_ues < 2) {
    return out;
  }
  const MatrixList gramians = gramians_of(precoders);
  for (std::size_t k = 0; k < channels.num_ues; ++k) {
    out.push_back(*worst_eavesdropper(k, gramians, channels, sigma2).index);
  }
  return out;
}

double ldt_intended(std::size_t k, const MatrixList& precoders, const ChannelSet& channels,
                    double sigma2, const IntendedAux& aux) {
  const MatrixList hv = project(channels.effective[k], precoders);
  return ldt_nats(hv[k], receive_cov(hv, sigma2, kNone, kNone), aux.gamma[k]) / kLn2;
}

double ldt_leakage(std::size_t k, const MatrixList& precoders, const ChannelSet& channels,
                   double sigma2, const LeakageAux& aux) {
  if (aux.empty()) {
    return 0.0;
  }
  const std::size_t e = aux.eavesdropper[k];
  const MatrixList hv = project(channels.effective[e], precoders);
  return ldt_nats(hv[k], receive_cov(hv, sigma2, e, kNone), aux.gamma[k]) / kLn2;
}

double qt_intended(std::size_t k, const MatrixList& precoders, const ChannelSet& channels,
                   double sigma2, const IntendedAux& aux) {
  const MatrixList hv = project(channels.effective[k], precoders);
  return qt_nats(hv[k], receive_cov(hv, sigma2, kNone, kNone), aux.gamma[k], aux.y[k]) / kLn2;
}

double qt_leakage(std::size_t k, const MatrixList& precoders, const ChannelSet& channels,
                  double sigma2, const LeakageAux& aux) {
  if (aux.empty()) {
    return 0.0;
  }
  const std::size_t e = aux.eavesdropper[k];
  const MatrixList hv = project(channels.effective[e], precoders);
  return qt_nats(hv[k], receive_cov(hv, sigma2, e, kNone), aux.gamma[k], aux.y[k]) / kLn2;
}

MatrixList leakage_gradient(const MatrixList& precoders, const ChannelSet& channels,
                            const LeakageAux& aux) {
  check_sizes(precoders, channels);
  const std::size_t K = channels.num_ues;
  MatrixList grad;
  grad.reserve(K);
  if (aux.empty()) {
    for (const auto& v : precoders) {
      grad.push_back(CMatrix::Zero(v.rows(), v.cols()));
    }
    return grad;
  }
  const Eigen::Index m = aux.gamma.front().rows();
  MatrixList a(K);
  MatrixList b(K);
  MatrixList weight(K);
  for (std::size_t k = 0; k < K; ++k) {
    weight[k] = identity(m) + aux.gamma[k];
    a[k] = linalg::mul_ah(channels.effective[aux.eavesdropper[k]], aux.y[k]);
    b[k] = linalg::mul_bh(linalg::mul(a[k], weight[k]), a[k]);
  }
  for (std::size_t k = 0; k < K; ++k) {
    CMatrix quad = CMatrix::Zero(b[k].rows(), b[k].cols());
    for (std::size_t j = 0; j < K; ++j) {
      if (aux.eavesdropper[j] != k) {
        quad += b[j];
      }
    }
    grad.push_back((2.0 * linalg::mul(a[k], weight[k]) - 2.0 * linalg::mul(quad, precoders[k])) /
                   kLn2);
  }
  return grad;
}

PrecoderUpdate update_precoders(const IntendedAux& aux, const ChannelSet& channels,
                                const MatrixList& gradient, double p_max, int max_bisection) {
  const std::size_t K = channels.num_ues;
  const auto n = static_cast<Eigen::Index>(channels.tx_antennas());
  const Eigen::Index m = static_cast<Eigen::Index>(channels.ue_antennas());
  if (aux.y.size() != K || (!gradient.empty() && gradient.size() != K)) {
    throw DomainError("update_precoders: auxiliaries and gradient must cover every user");
  }
  if (!(p_max >= 0.0)) {
    throw DomainError("update_precoders: P_max must be >= 0");
  }

  CMatrix q = CMatrix::Zero(n, n);
  MatrixList rhs;
  rhs.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    const CMatrix weight = identity(m) + aux.gamma[k];
    const CMatrix hy = linalg::mul_ah(channels.effective[k], aux.y[k]);  // H_k^H Y_k
    const CMatrix hyw = linalg::mul(hy, weight);
    q += linalg::mul_bh(hyw, hy);
    CMatrix r = hyw;
    if (!gradient.empty()) {
      r -= (0.5 * kLn2) * gradient[k];
    }
    rhs.push_back(std::move(r));
  }

  // power(mu) = sum_i w_i / (lambda_i + mu)^2 in the eigenbasis of Q.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(linalg::hermitian_part(q));
  if (es.info() != Eigen::Success) {
    throw NumericError("update_precoders: eigendecomposition failed");
  }
  const CMatrix& basis = es.eigenvectors();
  const Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
  MatrixList coeff;
  coeff.reserve(K);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  for (const auto& r : rhs) {
    coeff.push_back(linalg::mul_ah(basis, r));
    w += coeff.back().rowwise().squaredNorm();
  }
  auto power_at = [&](double mu) {
    double p = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (w(i) == 0.0) {
        continue;
      }
      const double d = lambda(i) + mu;
      if (!(d > 0.0)) {
        return std::numeric_limits<double>::infinity();
      }
      p += w(i) / (d * d);
    }
    return p;
  };

  PrecoderUpdate out;
  double mu = 0.0;
  if (power_at(0.0) > p_max) {
    double lo = 0.0;
    double hi = 1.0;
    int doublings = 0;
    while (power_at(hi) > p_max) {
      lo = hi;
      hi *= 2.0;
      if (++doublings > 4000 || !std::isfinite(hi)) {
        throw NumericError("update_precoders: could not bracket the power multiplier");
      }
    }
    int iters = 0;
    while (iters < max_bisection && power_at(lo) - power_at(hi) > 1e-6 * p_max) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) {
        break;
      }
      if (power_at(mid) > p_max) {
        lo = mid;
      } else {
        hi = mid;
      }
      ++iters;
    }
    mu = hi;
    out.bisection_iterations = iters;
  }

  Eigen::VectorXd scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = lambda(i) + mu;
    scale(i) = (w(i) == 0.0 || !(d > 0.0)) ? 0.0 : 1.0 / d;
  }
  out.precoders.reserve(K);
  for (const auto& c : coeff) {
    out.precoders.push_back(linalg::mul(basis, scale.asDiagonal() * c));
  }
  out.mu = mu;
  for (const auto& v : out.precoders) {
    out.power += linalg::frob2(v);
  }
  return out;
}

double safeguarded_step(const MatrixList& current, const MatrixList& candidate,
                        const ChannelSet& channels, double sigma2, int max_halvings) {
  const double base = relaxed_objective(gramians_of(current), channels, sigma2);
  double t = 1.0;
  for (int h = 0; h <= max_halvings; ++h, t *= 0.5) {
    MatrixList trial;
    trial.reserve(current.size());
    for (std::size_t k = 0; k < current.size(); ++k) {
      trial.push_back(current[k] + t * (candidate[k] - current[k]));
    }
    if (relaxed_objective(gramians_of(trial), channels, sigma2) >= base) {
      return t;
    }
  }
  return 0.0;
}

double max_precoder_delta(const MatrixList& a, const MatrixList& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    worst = std::max(worst, std::sqrt(linalg::frob2(a[k] - b[k])));
  }
  return worst;
}

SolveResult run_seclm(const SystemConfig& cfg, const ChannelSet& channels, double p_max,
                      const TraceSink& trace) {
  const double sigma2 = cfg.sigma2_w();
  const double scale = std::sqrt(p_max);
  MatrixList v = tx_mmse_init(channels, sigma2, p_max);

  FpState state;
  state.objective_trace.push_back(relaxed_objective(gramians_of(v), channels, sigma2));
  if (trace) {
    trace({0, 0, state.objective_trace.back(), BeamformerSet::from_precoders(v).total_power(), 0.0,
           0.0});
  }

  for (int fp = 1; fp <= cfg.i_fp_max; ++fp) {
    state.fp_iterations = fp;
    state.eavesdroppers = worst_eavesdroppers(v, channels, sigma2);
    state.intended = build_aux_i(v, channels, sigma2);
    state.previous = v;

    for (int ccp = 1; ccp <= cfg.i_ccp_max; ++ccp) {
      state.leakage = build_aux_l(v, state.eavesdroppers, channels, sigma2);
      const MatrixList grad = leakage_gradient(v, channels, state.leakage);
      PrecoderUpdate upd = update_precoders(state.intended, channels, grad, p_max, cfg.i_bs_max);
      double step = 1.0;
      if (cfg.ccp_step == CcpStep::safeguarded) {
        step = safeguarded_step(v, upd.precoders, channels, sigma2, kMaxHalvings);
        if (step < 1.0) {
          for (std::size_t k = 0; k < v.size(); ++k) {
            upd.precoders[k] = v[k] + step * (upd.precoders[k] - v[k]);
          }
        }
      }
      const double delta = max_precoder_delta(upd.precoders, v);
      v = std::move(upd.precoders);
      const double power = BeamformerSet::from_precoders(v).total_power();
      ++state.ccp_iterations;
      state.bisection_iterations += upd.bisection_iterations;
      state.updates.push_back(
          {fp, ccp, upd.mu, upd.power, step, power, delta, upd.bisection_iterations});
      if (trace) {
        trace({fp, ccp, relaxed_objective(gramians_of(v), channels, sigma2), power, delta, step});
      }
      if (delta <= cfg.eps_ccp * scale) {
        break;
      }
    }

    state.objective_trace.push_back(relaxed_objective(gramians_of(v), channels, sigma2));
    if (max_precoder_delta(v, state.previous) <= cfg.eps_fp * scale) {
      state.converged = true;
      break;
    }
  }

  SolveResult result;
  result.beamformers = BeamformerSet::from_precoders(std::move(v));
  attach_rx_mmse(result.beamformers, channels, sigma2);

  const double K = static_cast<double>(channels.num_ues);
  const double N = static_cast<double>(channels.tx_antennas());
  const double M = static_cast<double>(channels.ue_antennas());
  const double updates = std::max(1.0, static_cast<double>(state.ccp_iterations));
  const double i_fp = std::max(1, state.fp_iterations);
  const double flops = flops_proposed(i_fp, updates / i_fp,
                                      std::max(1.0, state.bisection_iterations / updates), K, N, M);
  result.metrics = evaluate(result.beamformers, channels, sigma2, flops);
  result.state = std::move(state);
  return result;
}

}  // namespace cfsec
