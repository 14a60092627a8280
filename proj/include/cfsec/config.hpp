// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cfsec {

enum class PathlossMode { normalized, geometric };
enum class CorrelationMode { quadrature, closed_form };
/// How a CCP candidate becomes the next iterate: `safeguarded` halves the
/// step toward the candidate until the relaxed objective does not drop,
/// `plain` always takes the full step.
enum class CcpStep { safeguarded, plain };

/// Scenario constants. Defaults reproduce the reference scenario
/// (4 APs x 2 antennas, 4 UEs x 2 antennas, 500 m UE square, 300 m AP square).
struct SystemConfig {
  std::size_t num_aps = 4;       // L
  std::size_t num_ues = 4;       // K
  std::size_t ue_antennas = 2;   // M
  std::size_t ap_antennas = 2;   // N_t

  double ap_height_m = 10.0;
  double ue_height_m = 1.5;
  double carrier_hz = 2e9;
  double ue_square_m = 500.0;
  double ap_square_m = 300.0;
  double sigma2_dbm = -96.0;
  double p_max_ref_w = 1.0;
  std::vector<double> snr_grid_db{0.0, 5.0, 10.0, 15.0, 20.0};

  double angular_std_deg = 10.0;
  double antenna_spacing_wl = 0.5;

  double eps_fp = 1e-3;
  double eps_ccp = 1e-3;
  int i_fp_max = 30;
  int i_ccp_max = 10;
  int i_bs_max = 100;
  CcpStep ccp_step = CcpStep::safeguarded;

  PathlossMode pathloss_mode = PathlossMode::normalized;
  CorrelationMode correlation_mode = CorrelationMode::quadrature;
  std::uint64_t seed = 1;

  /// N = L * N_t
  std::size_t total_tx_antennas() const noexcept { return num_aps * ap_antennas; }
  double sigma2_w() const;
  /// P_max such that 10 log10(P_max / sigma2) = snr_db.
  double p_max_for_snr(double snr_db) const;

  /// Throws ValidationError on the first violated invariant.
  void validate() const;

  bool operator==(const SystemConfig&) const = default;
};

/// 10^(p/10) * 1e-3
double dbm_to_watt(double dbm) noexcept;

/// Parse a flat `key = value` document. `#` starts a comment. Unknown keys
/// are appended to `warnings` (when given) and otherwise ignored.
SystemConfig parse_config(std::string_view text, std::vector<std::string>* warnings = nullptr);

SystemConfig load_config(const std::filesystem::path& path,
                         std::vector<std::string>* warnings = nullptr);

std::string_view to_string(PathlossMode mode) noexcept;
std::string_view to_string(CorrelationMode mode) noexcept;
std::string_view to_string(CcpStep mode) noexcept;

}  // namespace cfsec
