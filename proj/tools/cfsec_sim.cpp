// SPDX-License-Identifier: Apache-2.0
//
// cfsec_sim: Monte Carlo SNR sweep of the MMSE, SRM and SecLM precoders, or
// the flop-count table with --complexity.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cfsec/channel.hpp"
#include "cfsec/complexity.hpp"
#include "cfsec/config.hpp"
#include "cfsec/errors.hpp"
#include "cfsec/kernels.hpp"
#include "cfsec/sweep.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw cfsec::IoError(path, "cannot open '" + path + "' for writing");
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Secrecy-aware precoding sweep for cell-free MIMO downlink"};
  std::string config_path;
  std::string algos = "mmse,srm,seclm";
  std::optional<double> snr_min;
  std::optional<double> snr_max;
  std::optional<double> snr_step;
  std::size_t drops = 200;
  std::optional<std::uint64_t> seed;
  std::string out_prefix = "cfsec";
  bool trace = false;
  bool complexity = false;
  std::string dump_path;
  unsigned threads = 1;

  app.add_option("--config", config_path, "key = value scenario file (defaults if omitted)")
      ->check(CLI::ExistingFile);
  app.add_option("--algos", algos, "comma list from mmse,srm,seclm");
  app.add_option("--snr-min", snr_min, "first SNR point, dB");
  app.add_option("--snr-max", snr_max, "last SNR point, dB");
  app.add_option("--snr-step", snr_step, "SNR spacing, dB");
  app.add_option("--drops", drops, "drops per SNR point")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "root seed (overrides the config)");
  app.add_option("--out", out_prefix, "output prefix");
  app.add_flag("--trace", trace, "write <out>.trace.csv with per-iteration records");
  app.add_flag("--complexity", complexity, "write <out>.complexity.csv and exit");
  app.add_option("--channel-dump", dump_path, "write every drop's channel to this file");
  app.add_option("--threads", threads, "worker threads, 0 = all cores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::vector<std::string> warnings;
  cfsec::SystemConfig cfg =
      config_path.empty() ? cfsec::SystemConfig{} : cfsec::load_config(config_path, &warnings);
  for (const auto& w : warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  if (seed) {
    cfg.seed = *seed;
  }
  cfg.validate();

  if (complexity) {
    const std::string path = out_prefix + ".complexity.csv";
    std::ofstream out = open_or_throw(path);
    const auto K = static_cast<double>(cfg.num_ues);
    const auto M = static_cast<double>(cfg.ue_antennas);
    cfsec::write_complexity_csv(out, cfsec::complexity_table({8, 16, 32, 64, 128, 256}, K, M), K,
                                M);
    std::printf("wrote %s\n", path.c_str());
    return 0;
  }

  cfsec::SweepOptions opts;
  opts.algorithms = cfsec::parse_algorithms(algos);
  opts.drops = drops;
  opts.threads = threads;
  if (snr_min || snr_max || snr_step) {
    const double lo = snr_min.value_or(cfg.snr_grid_db.front());
    const double hi = snr_max.value_or(snr_min ? lo : cfg.snr_grid_db.back());
    opts.snr_grid_db = cfsec::snr_range(lo, hi, snr_step.value_or(5.0));
  } else {
    opts.snr_grid_db = cfg.snr_grid_db;
  }

  std::ofstream trace_out;
  if (trace) {
    trace_out = open_or_throw(out_prefix + ".trace.csv");
    opts.trace = &trace_out;
  }
  std::ofstream dump_out;
  if (!dump_path.empty()) {
    dump_out = open_or_throw(dump_path);
    cfsec::write_channel_dump_header(dump_out, cfg);
    opts.channel_dump = &dump_out;
  }

  const cfsec::SweepResult result = cfsec::run_sweep(cfg, opts);
  cfsec::emit_csv(result, out_prefix);

  std::printf("kernels: %s  drops: %zu  seed: %llu\n",
              std::string(cfsec::kernels::active().name).c_str(), drops,
              static_cast<unsigned long long>(cfg.seed));
  std::printf("%-6s %7s %12s %12s %12s %6s %5s\n", "algo", "snr_db", "secrecy", "rate", "leakage",
              "conv", "fail");
  for (const auto& row : result.summary) {
    std::printf("%-6s %7.2f %12.4f %12.4f %12.4f %6.2f %5zu\n",
                std::string(cfsec::to_string(row.algo)).c_str(), row.snr_db, row.mean_sum_secrecy,
                row.mean_sum_rate, row.mean_sum_leakage, row.converged_fraction, row.failed);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cfsec::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitValidation;
  } catch (const cfsec::ValidationError& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kExitValidation;
  } catch (const cfsec::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
}
