// SPDX-License-Identifier: Apache-2.0
#include "cfsec/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "cfsec/channel.hpp"
#include "cfsec/errors.hpp"
#include "cfsec/mmse.hpp"
#include "cfsec/seclm.hpp"
#include "cfsec/srm.hpp"
#include "cfsec/topology.hpp"

namespace cfsec {

namespace {

double round12(double x) { return std::strtod(format_value(x).c_str(), nullptr); }

struct DropOutput {
  std::vector<DropRecord> records;
  std::string trace;
  std::string dump;
};

void solve_one(const SystemConfig& cfg, const ChannelSet& channels, DropRecord& rec,
               std::ostream* trace) {
  const double sigma2 = cfg.sigma2_w();
  TraceSink sink;
  if (trace != nullptr) {
    sink = [&](const IterationRecord& it) {
      *trace << rec.drop << ',' << format_value(rec.snr_db) << ',' << to_string(rec.algo) << ','
             << it.fp_iteration << ',' << it.ccp_iteration << ',' << format_value(it.objective)
             << ',' << format_value(it.power) << ',' << format_value(it.max_delta) << ','
             << format_value(it.step) << '\n';
    };
  }
  switch (rec.algo) {
    case Algorithm::mmse: {
      BeamformerSet bf = BeamformerSet::from_precoders(tx_mmse_init(channels, sigma2, rec.p_max));
      attach_rx_mmse(bf, channels, sigma2);
      rec.metrics = evaluate(bf, channels, sigma2);
      rec.converged = true;
      break;
    }
    case Algorithm::srm:
    case Algorithm::seclm: {
      SolveResult res = rec.algo == Algorithm::srm ? run_srm(cfg, channels, rec.p_max, sink)
                                                   : run_seclm(cfg, channels, rec.p_max, sink);
      rec.metrics = std::move(res.metrics);
      rec.converged = res.state.converged;
      rec.fp_iterations = res.state.fp_iterations;
      rec.ccp_iterations = res.state.ccp_iterations;
      break;
    }
  }
}

DropOutput run_drop(const SystemConfig& cfg, const SweepOptions& opts, std::size_t drop) {
  DropOutput out;
  Rng rng = make_stream(cfg.seed, {static_cast<std::uint64_t>(drop)});
  const Topology topo = place_nodes(cfg, rng);
  const ChannelSet channels = build_channel_set(cfg, topo, rng);
  const std::uint64_t checksum = channel_checksum(channels);

  if (opts.channel_dump != nullptr) {
    std::ostringstream dump;
    write_channel_dump(dump, drop, channels);
    out.dump = dump.str();
  }
  std::ostringstream trace;
  for (double snr : opts.snr_grid_db) {
    for (Algorithm algo : opts.algorithms) {
      DropRecord rec;
      rec.drop = drop;
      rec.snr_db = snr;
      rec.algo = algo;
      rec.checksum = checksum;
      rec.p_max = cfg.p_max_for_snr(snr);
      const auto start = std::chrono::steady_clock::now();
      try {
        solve_one(cfg, channels, rec, opts.trace != nullptr ? &trace : nullptr);
      } catch (const NumericError& e) {
        rec.failed = true;
        rec.error = e.what();
      } catch (const DomainError& e) {
        rec.failed = true;
        rec.error = e.what();
      }
      rec.solve_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      out.records.push_back(std::move(rec));
    }
  }
  out.trace = trace.str();
  return out;
}

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) {
    sum += x;
  }
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

double stderr_of(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) {
    return 0.0;
  }
  double ss = 0.0;
  for (double x : xs) {
    ss += (x - mean) * (x - mean);
  }
  const double n = static_cast<double>(xs.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(path.string(), "cannot open '" + path.string() + "' for writing");
  }
  return out;
}

}  // namespace

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::mmse:
      return "mmse";
    case Algorithm::srm:
      return "srm";
    case Algorithm::seclm:
      return "seclm";
  }
  return "?";
}

std::vector<Algorithm> parse_algorithms(std::string_view list) {
  std::vector<Algorithm> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    std::string_view name = list.substr(pos, comma - pos);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    Algorithm algo;
    if (name == "mmse") algo = Algorithm::mmse;
    else if (name == "srm") algo = Algorithm::srm;
    else if (name == "seclm") algo = Algorithm::seclm;
    else throw ValidationError("unknown algorithm '" + std::string(name) + "' (expected mmse, srm, seclm)");
    if (std::find(out.begin(), out.end(), algo) != out.end()) {
      throw ValidationError("algorithm '" + std::string(name) + "' listed twice");
    }
    out.push_back(algo);
    pos = comma + 1;
  }
  return out;
}

std::vector<double> snr_range(double min_db, double max_db, double step_db) {
  if (!std::isfinite(min_db) || !std::isfinite(max_db) || !std::isfinite(step_db)) {
    throw ValidationError("SNR range must be finite");
  }
  if (!(step_db > 0.0)) {
    throw ValidationError("SNR step must be > 0");
  }
  if (max_db < min_db) {
    throw ValidationError("SNR max must be >= SNR min");
  }
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double v = min_db + static_cast<double>(i) * step_db;
    if (v > max_db + 1e-9 * std::max(1.0, std::abs(step_db))) {
      break;
    }
    grid.push_back(v);
  }
  return grid;
}

SweepResult run_sweep(const SystemConfig& cfg, const SweepOptions& opts) {
  cfg.validate();
  if (opts.drops < 1) {
    throw ValidationError("drops must be >= 1");
  }
  if (opts.algorithms.empty()) {
    throw ValidationError("at least one algorithm is required");
  }
  if (opts.snr_grid_db.empty()) {
    throw ValidationError("SNR grid is empty");
  }

  std::vector<DropOutput> outputs(opts.drops);
  unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                       : opts.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, opts.drops));
  if (threads <= 1) {
    for (std::size_t d = 0; d < opts.drops; ++d) {
      outputs[d] = run_drop(cfg, opts, d);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t d = next++; d < opts.drops; d = next++) {
          outputs[d] = run_drop(cfg, opts, d);
        }
      });
    }
    for (auto& th : pool) {
      th.join();
    }
  }

  SweepResult result;
  result.seed = cfg.seed;
  result.num_ues = cfg.num_ues;
  if (opts.trace != nullptr) {
    *opts.trace << kTraceHeader << '\n';
  }
  for (auto& out : outputs) {
    if (opts.trace != nullptr) {
      *opts.trace << out.trace;
    }
    if (opts.channel_dump != nullptr) {
      *opts.channel_dump << out.dump;
    }
    for (auto& rec : out.records) {
      result.drops.push_back(std::move(rec));
    }
  }
  result.summary = summarize(result.drops, opts.algorithms, opts.snr_grid_db);
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<DropRecord>& drops,
                                  const std::vector<Algorithm>& algorithms,
                                  const std::vector<double>& snr_grid_db) {
  std::vector<SummaryRow> rows;
  for (double snr : snr_grid_db) {
    for (Algorithm algo : algorithms) {
      SummaryRow row;
      row.algo = algo;
      row.snr_db = snr;
      std::vector<double> sec;
      std::vector<double> rate;
      std::vector<double> leak;
      std::size_t converged = 0;
      double ms = 0.0;
      for (const auto& rec : drops) {
        if (rec.algo != algo || rec.snr_db != snr) {
          continue;
        }
        ++row.drops;
        if (rec.failed) {
          ++row.failed;
          continue;
        }
        sec.push_back(round12(rec.metrics.sum_secrecy));
        rate.push_back(round12(rec.metrics.sum_rate));
        leak.push_back(round12(rec.metrics.sum_leakage));
        converged += rec.converged ? 1 : 0;
        ms += rec.solve_ms;
      }
      row.mean_sum_secrecy = mean_of(sec);
      row.se_sum_secrecy = stderr_of(sec, row.mean_sum_secrecy);
      row.mean_sum_rate = mean_of(rate);
      row.se_sum_rate = stderr_of(rate, row.mean_sum_rate);
      row.mean_sum_leakage = mean_of(leak);
      row.se_sum_leakage = stderr_of(leak, row.mean_sum_leakage);
      if (!sec.empty()) {
        row.converged_fraction =
            static_cast<double>(converged) / static_cast<double>(sec.size());
        row.mean_solve_ms = ms / static_cast<double>(sec.size());
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string format_value(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string drops_header(std::size_t num_ues) {
  std::string h =
      "drop,snr_db,algo,channel_checksum,status,converged,fp_iterations,ccp_iterations,p_max_w,"
      "power_used_w,sum_secrecy,sum_rate,sum_leakage,flops";
  for (std::size_t k = 0; k < num_ues; ++k) {
    const std::string s = std::to_string(k);
    h += ",eta_i_" + s + ",eta_l_" + s + ",e_worst_" + s + ",secrecy_" + s;
  }
  return h;
}

void write_drops_csv(std::ostream& out, const SweepResult& result) {
  out << drops_header(result.num_ues) << '\n';
  for (const auto& rec : result.drops) {
    char sum[20];
    std::snprintf(sum, sizeof sum, "%016" PRIx64, rec.checksum);
    out << rec.drop << ',' << format_value(rec.snr_db) << ',' << to_string(rec.algo) << ',' << sum
        << ',' << (rec.failed ? "failed" : "ok") << ',' << (rec.converged ? 1 : 0) << ','
        << rec.fp_iterations << ',' << rec.ccp_iterations << ',' << format_value(rec.p_max);
    const MetricsRecord& m = rec.metrics;
    if (rec.failed) {
      out << ",,,,,";
      for (std::size_t k = 0; k < result.num_ues; ++k) {
        out << ",,,,";
      }
      out << '\n';
      continue;
    }
    out << ',' << format_value(m.power_used) << ',' << format_value(m.sum_secrecy) << ','
        << format_value(m.sum_rate) << ',' << format_value(m.sum_leakage) << ','
        << format_value(m.flops);
    for (std::size_t k = 0; k < result.num_ues; ++k) {
      out << ',' << format_value(m.eta_i[k]) << ',' << format_value(m.eta_l_worst[k]) << ','
          << m.e_worst[k] << ',' << format_value(m.secrecy[k]);
    }
    out << '\n';
  }
}

void write_summary_csv(std::ostream& out, const SweepResult& result) {
  out << kSummaryHeader << '\n';
  for (const auto& row : result.summary) {
    out << to_string(row.algo) << ',' << format_value(row.snr_db) << ',' << row.drops << ','
        << row.failed << ',' << format_value(row.mean_sum_secrecy) << ','
        << format_value(row.se_sum_secrecy) << ',' << format_value(row.mean_sum_rate) << ','
        << format_value(row.se_sum_rate) << ',' << format_value(row.mean_sum_leakage) << ','
        << format_value(row.se_sum_leakage) << ',' << format_value(row.converged_fraction) << ','
        << format_value(row.mean_solve_ms) << ',' << result.seed << '\n';
  }
}

void emit_csv(const SweepResult& result, const std::filesystem::path& prefix) {
  const std::filesystem::path drops = prefix.string() + ".drops.csv";
  const std::filesystem::path summary = prefix.string() + ".summary.csv";
  {
    std::ofstream out = open_out(drops);
    write_drops_csv(out, result);
    if (!out.flush()) {
      throw IoError(drops.string(), "write to '" + drops.string() + "' failed");
    }
  }
  std::ofstream out = open_out(summary);
  write_summary_csv(out, result);
  if (!out.flush()) {
    throw IoError(summary.string(), "write to '" + summary.string() + "' failed");
  }
}

}  // namespace cfsec
