// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cfsec/config.hpp"
#include "cfsec/rates.hpp"

namespace cfsec {

enum class Algorithm { mmse, srm, seclm };

std::string_view to_string(Algorithm algo) noexcept;

/// Comma-separated subset of {mmse, srm, seclm}. Order is kept, duplicates
/// and unknown names throw ValidationError.
std::vector<Algorithm> parse_algorithms(std::string_view list);

/// min, min + step, ... up to max (inclusive, with 1e-9 step slack).
std::vector<double> snr_range(double min_db, double max_db, double step_db);

struct DropRecord {
  std::size_t drop = 0;
  double snr_db = 0.0;
  Algorithm algo = Algorithm::mmse;
  std::uint64_t checksum = 0;  // channel_checksum of the drop
  bool failed = false;
  std::string error;
  bool converged = true;
  int fp_iterations = 0;
  int ccp_iterations = 0;
  double p_max = 0.0;
  double solve_ms = 0.0;  // summary only; never written per drop
  MetricsRecord metrics;
};

struct SummaryRow {
  Algorithm algo = Algorithm::mmse;
  double snr_db = 0.0;
  std::size_t drops = 0;   // requested
  std::size_t failed = 0;  // excluded from every mean
  double mean_sum_secrecy = 0.0;
  double se_sum_secrecy = 0.0;
  double mean_sum_rate = 0.0;
  double se_sum_rate = 0.0;
  double mean_sum_leakage = 0.0;
  double se_sum_leakage = 0.0;
  double converged_fraction = 0.0;
  double mean_solve_ms = 0.0;
};

struct SweepResult {
  std::uint64_t seed = 0;
  std::size_t num_ues = 0;
  std::vector<DropRecord> drops;  // ordered by (drop, snr, algorithm)
  std::vector<SummaryRow> summary;
};

struct SweepOptions {
  std::vector<Algorithm> algorithms{Algorithm::mmse, Algorithm::srm, Algorithm::seclm};
  std::vector<double> snr_grid_db;
  std::size_t drops = 200;
  unsigned threads = 1;  // 0 = hardware concurrency
  std::ostream* trace = nullptr;         // per-iteration records, CSV
  std::ostream* channel_dump = nullptr;  // write_channel_dump format
};

/// Every drop draws one topology and channel from make_stream(cfg.seed,
/// {drop}) and reuses it for every SNR point and algorithm. Solver errors
/// mark the record failed. Output is independent of the thread count.
SweepResult run_sweep(const SystemConfig& cfg, const SweepOptions& opts);

/// Means and standard errors over the non-failed records of each cell. Values
/// are folded after rounding to the 12 significant digits that the drops file
/// carries, so the summary can be recomputed from that file exactly.
std::vector<SummaryRow> summarize(const std::vector<DropRecord>& drops,
                                  const std::vector<Algorithm>& algorithms,
                                  const std::vector<double>& snr_grid_db);

inline constexpr std::string_view kSummaryHeader =
    "algo,snr_db,drops,failed,mean_sum_secrecy,se_sum_secrecy,mean_sum_rate,se_sum_rate,"
    "mean_sum_leakage,se_sum_leakage,converged_fraction,mean_solve_ms,seed";

inline constexpr std::string_view kTraceHeader =
    "drop,snr_db,algo,fp_iteration,ccp_iteration,objective,power,max_delta,step";

/// Header of the drops file for K users: fixed columns, then eta_i_k,
/// eta_l_k, e_worst_k, secrecy_k for every user.
std::string drops_header(std::size_t num_ues);

/// %.12g
std::string format_value(double value);

void write_drops_csv(std::ostream& out, const SweepResult& result);
void write_summary_csv(std::ostream& out, const SweepResult& result);

/// Writes `<prefix>.drops.csv` and `<prefix>.summary.csv`. Throws IoError.
void emit_csv(const SweepResult& result, const std::filesystem::path& prefix);

}  // namespace cfsec
