// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "cfsec/complexity.hpp"
#include "cfsec/mmse.hpp"
#include "cfsec/seclm.hpp"
#include "cfsec/srm.hpp"
#include "cfsec/sweep.hpp"
#include "cfsec/topology.hpp"
#include "support.hpp"

using namespace cfsec;

namespace {

int failures = 0;

void report(const char* name, bool ok, const std::string& detail, double seconds) {
  std::printf("%s %-22s %s (%.1f s)\n", ok ? "PASS" : "FAIL", name, detail.c_str(), seconds);
  std::fflush(stdout);
  failures += ok ? 0 : 1;
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void timed(const char* name, const std::function<std::pair<bool, std::string>()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto [ok, detail] = body();
  report(name, ok, detail,
         std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

ChannelSet drop_channels(const SystemConfig& cfg, std::uint64_t seed, std::uint64_t drop) {
  Rng rng = make_stream(seed, {drop});
  const Topology topo = place_nodes(cfg, rng);
  return build_channel_set(cfg, topo, rng);
}

// Reference-scenario channel and a random feasible precoder around the MMSE
// start, rates in units where sigma2 = 1.
struct Instance {
  ChannelSet ch;
  MatrixList v;
  double p;
};

Instance reference_instance(std::uint64_t seed, std::uint64_t i) {
  const SystemConfig cfg;
  Instance in;
  in.ch = drop_channels(cfg, seed, i);
  Rng rng = make_stream(seed, {i, 99});
  in.p = std::pow(10.0, fx::uniform(rng, 0.0, 2.0));
  in.v = tx_mmse_init(in.ch, 1.0, in.p);
  for (auto& x : in.v) x += fx::random_cmatrix(rng, x.rows(), x.cols(), 0.5 * std::sqrt(in.p / 4));
  return in;
}

std::pair<bool, std::string> surrogate_tightness() {
  double worst_ldt = 0.0;
  double worst_qt = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Instance in = reference_instance(101, i);
    const MatrixList f = gramians_of(in.v);
    const IntendedAux ai = build_aux_i(in.v, in.ch, 1.0);
    const auto e = worst_eavesdroppers(in.v, in.ch, 1.0);
    const LeakageAux al = build_aux_l(in.v, e, in.ch, 1.0);
    for (std::size_t k = 0; k < 4; ++k) {
      const double li = ldt_intended(k, in.v, in.ch, 1.0, ai);
      const double ll = ldt_leakage(k, in.v, in.ch, 1.0, al);
      worst_ldt = std::max({worst_ldt, std::abs(li - intended_rate(k, f, in.ch, 1.0)),
                            std::abs(ll - leakage_rate(k, e[k], f, in.ch, 1.0))});
      worst_qt = std::max({worst_qt, std::abs(qt_intended(k, in.v, in.ch, 1.0, ai) - li),
                           std::abs(qt_leakage(k, in.v, in.ch, 1.0, al) - ll)});
    }
  }
  return {worst_ldt <= 1e-8 && worst_qt <= 1e-8,
          fmt("100 instances, max |LDT-rate| %.2e, max |QT-LDT| %.2e (tol 1e-8)", worst_ldt, worst_qt)};
}

std::pair<bool, std::string> gradient_check() {
  double worst = 0.0;
  const double h = 1e-6;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Instance in = reference_instance(202, i);
    const auto e = worst_eavesdroppers(in.v, in.ch, 1.0);
    const LeakageAux al = build_aux_l(in.v, e, in.ch, 1.0);
    Rng rng = make_stream(202, {i, 7});
    MatrixList at = in.v;
    for (auto& x : at) x += fx::random_cmatrix(rng, x.rows(), x.cols(), 0.2 * std::sqrt(in.p / 4));
    auto total = [&](const MatrixList& w) {
      double s = 0.0;
      for (std::size_t k = 0; k < 4; ++k) s += qt_leakage(k, w, in.ch, 1.0, al);
      return s;
    };
    const MatrixList g = leakage_gradient(at, in.ch, al);
    double err = 0.0;
    double norm = 0.0;
    for (std::size_t k = 0; k < 4; ++k)
      for (Eigen::Index j = 0; j < at[k].size(); ++j)
        for (const cplx d : {cplx(h, 0), cplx(0, h)}) {
          MatrixList p = at;
          MatrixList m = at;
          p[k](j) += d;
          m[k](j) -= d;
          const double fd = (total(p) - total(m)) / (2 * h);
          const double an = d.real() != 0 ? g[k](j).real() : g[k](j).imag();
          err += (fd - an) * (fd - an);
          norm += fd * fd;
        }
    worst = std::max(worst, std::sqrt(err / norm));
  }
  return {worst <= 1e-4, fmt("50 instances N=8 M=2 K=4, max relative error %.2e (tol 1e-4)", worst)};
}

std::vector<SolveResult> seclm_runs;

std::pair<bool, std::string> monotone_ascent() {
  const SystemConfig cfg;
  int monotone = 0;
  for (std::uint64_t d = 0; d < 100; ++d) {
    const ChannelSet ch = drop_channels(cfg, 303, d);
    SolveResult r = run_seclm(cfg, ch, cfg.p_max_for_snr(10.0));
    bool ok = true;
    const auto& t = r.state.objective_trace;
    for (std::size_t i = 1; i < t.size(); ++i) ok = ok && t[i] >= t[i - 1] - 1e-6;
    monotone += ok ? 1 : 0;
    seclm_runs.push_back(std::move(r));
  }
  return {monotone >= 95, fmt("%d/100 drops non-decreasing at 10 dB (need 95)", monotone)};
}

std::pair<bool, std::string> power_feasibility() {
  const SystemConfig cfg;
  std::size_t iterates = 0;
  std::size_t violations = 0;
  std::size_t active = 0;
  std::size_t slack = 0;
  auto check = [&](const FpState& s, double p) {
    for (const auto& u : s.updates) {
      ++iterates;
      if (u.iterate_power > p * (1 + 1e-9) || u.power > p * (1 + 1e-9)) ++violations;
      if (u.mu > 0) {
        ++active;
        if (u.power < p * (1 - 1e-5)) ++slack;
      }
    }
  };
  for (const auto& r : seclm_runs) check(r.state, cfg.p_max_for_snr(10.0));
  for (std::uint64_t d = 0; d < 20; ++d) {
    const ChannelSet ch = drop_channels(cfg, 404, d);
    for (double snr : {0.0, 20.0}) {
      const double p = cfg.p_max_for_snr(snr);
      const MatrixList init = tx_mmse_init(ch, cfg.sigma2_w(), p);
      ++iterates;
      if (fx::total_power(init) > p * (1 + 1e-9)) ++violations;
      check(run_seclm(cfg, ch, p).state, p);
      check(run_srm(cfg, ch, p).state, p);
    }
  }
  return {violations == 0 && slack == 0,
          fmt("%zu iterates, %zu over budget; %zu with mu>0, %zu below P(1-1e-5)", iterates,
              violations, active, slack)};
}

std::pair<bool, std::string> oracle_equivalence() {
  Rng rng = make_stream(505, {});
  double worst = 0.0;
  int mismatched_e = 0;
  int cases = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t K = fx::uniform_index(rng, 1, 5);
    const std::size_t L = fx::uniform_index(rng, 1, 3);
    const std::size_t M = fx::uniform_index(rng, 1, 3);
    const std::size_t nt = fx::uniform_index(rng, 1, 3);
    const ChannelSet ch = fx::random_channels(rng, L, K, M, nt);
    const double s2 = std::exp(fx::uniform(rng, -4.0, 1.0));
    const MatrixList f = fx::plain_gramians(
        fx::random_precoders(rng, K, L * nt, M, fx::uniform(rng, 0.1, 10.0)));
    for (std::size_t k = 0; k < K; ++k) {
      worst = std::max(worst, (interference_cov(k, f, ch, s2) -
                               fx::brute_cov(ch.effective[k], f, s2, {k})).cwiseAbs().maxCoeff());
      worst = std::max(worst, std::abs(intended_rate(k, f, ch, s2) - fx::brute_intended(k, f, ch, s2)));
      double best = -1.0;
      std::size_t arg = K;
      for (std::size_t e = 0; e < K; ++e) {
        if (e == k) continue;
        worst = std::max(worst, (eav_interference_cov(k, e, f, ch, s2) -
                                 fx::brute_cov(ch.effective[e], f, s2, {k, e})).cwiseAbs().maxCoeff());
        const double r = fx::brute_leakage(k, e, f, ch, s2);
        worst = std::max(worst, std::abs(leakage_rate(k, e, f, ch, s2) - r));
        if (r > best) {
          best = r;
          arg = e;
        }
      }
      const Eavesdropper w = worst_eavesdropper(k, f, ch, s2);
      const bool same = K == 1 ? !w.index.has_value() : (w.index && *w.index == arg);
      mismatched_e += same ? 0 : 1;
      ++cases;
    }
  }
  return {worst <= 1e-10 && mismatched_e == 0,
          fmt("%d user cases K<=5, max deviation %.2e (tol 1e-10), %d e~ mismatches", cases, worst,
              mismatched_e)};
}

std::pair<bool, std::string> figure_orderings() {
  SystemConfig cfg;
  SweepOptions o;
  o.snr_grid_db = {0, 5, 10, 15, 20};
  o.drops = 200;
  o.threads = 1;
  const SweepResult r = run_sweep(cfg, o);
  auto cell = [&](Algorithm a, double snr) -> const SummaryRow& {
    for (const auto& row : r.summary)
      if (row.algo == a && row.snr_db == snr) return row;
    throw std::logic_error("missing cell");
  };
  bool ok = true;
  std::string detail;
  for (double snr : o.snr_grid_db) {
    const auto& mm = cell(Algorithm::mmse, snr);
    const auto& sr = cell(Algorithm::srm, snr);
    const auto& sl = cell(Algorithm::seclm, snr);
    const bool sec_ok = sl.mean_sum_secrecy >= mm.mean_sum_secrecy;
    const bool leak_ok = snr < 15 || sl.mean_sum_leakage <= sr.mean_sum_leakage;
    const double gap = std::abs(sl.mean_sum_rate - sr.mean_sum_rate) / sr.mean_sum_rate;
    const bool rate_ok = gap <= 0.15;
    const bool complete = mm.failed + sr.failed + sl.failed == 0;
    ok = ok && sec_ok && leak_ok && rate_ok && complete;
    detail += fmt("%s%gdB sec %.2f>=%.2f leak %.2f/%.2f rate gap %.1f%%", detail.empty() ? "" : "; ", snr,
                  sl.mean_sum_secrecy, mm.mean_sum_secrecy, sl.mean_sum_leakage, sr.mean_sum_leakage,
                  100 * gap);
  }
  return {ok, "200 drops: " + detail};
}

std::pair<bool, std::string> complexity_separation() {
  const ComplexityDefaults it;
  double least = INFINITY;
  for (double n : {32.0, 64.0, 128.0, 256.0, 512.0}) {
    least = std::min(least, flops_sdp(it.i_sdp, 4, n, 2) / flops_proposed(it.i_fp, it.i_ccp, it.i_bs, 4, n, 2));
  }
  return {least >= 1e3, fmt("min flops_sdp/flops_proposed over N>=32: %.3g (need 1e3)", least)};
}

std::pair<bool, std::string> determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "cfsec_acceptance";
  std::filesystem::create_directories(dir);
  SystemConfig cfg;
  cfg.seed = 606;
  SweepOptions o;
  o.snr_grid_db = {0, 10, 20};
  o.drops = 8;
  emit_csv(run_sweep(cfg, o), dir / "a");
  o.threads = 4;
  emit_csv(run_sweep(cfg, o), dir / "b");
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(dir / "a.drops.csv");
  const std::string b = slurp(dir / "b.drops.csv");
  std::filesystem::remove_all(dir);
  return {!a.empty() && a == b, fmt("two runs, %zu bytes each, %s", a.size(), a == b ? "identical" : "differ")};
}

}  // namespace

int main() {
  timed("surrogate-tightness", surrogate_tightness);
  timed("gradient-check", gradient_check);
  timed("monotone-ascent", monotone_ascent);
  timed("power-feasibility", power_feasibility);
  timed("oracle-equivalence", oracle_equivalence);
  timed("figure-orderings", figure_orderings);
  timed("complexity-separation", complexity_separation);
  timed("determinism", determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
