// SPDX-License-Identifier: Apache-2.0
#include "cfsec/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cfsec/errors.hpp"

namespace cfsec {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, std::string_view value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
    throw ConfigError(key, "key '" + key + "': expected a finite number, got '" +
                               std::string(value) + "'");
  }
  return out;
}

long long parse_integer(const std::string& key, std::string_view value) {
  long long out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(key, "key '" + key + "': expected an integer, got '" +
                               std::string(value) + "'");
  }
  return out;
}

std::size_t parse_count(const std::string& key, std::string_view value) {
  const long long v = parse_integer(key, value);
  if (v < 1) {
    throw ConfigError(key, "key '" + key + "': count must be >= 1");
  }
  return static_cast<std::size_t>(v);
}

int parse_iterations(const std::string& key, std::string_view value) {
  const long long v = parse_integer(key, value);
  if (v < 0 || v > 1'000'000) {
    throw ConfigError(key, "key '" + key + "': iteration cap out of range");
  }
  return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& key, std::string_view value) {
  std::vector<double> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    out.push_back(parse_double(key, trim(value.substr(0, comma))));
    if (comma == std::string_view::npos) {
      break;
    }
    value.remove_prefix(comma + 1);
  }
  return out;
}

const std::set<std::string, std::less<>> kRequired{
    "L", "K", "M", "h_AP_m", "h_UE_m", "f_c_hz", "D_UE_m", "D_AP_m", "sigma2_dbm"};

}  // namespace

double dbm_to_watt(double dbm) noexcept { return std::pow(10.0, dbm / 10.0) * 1e-3; }

double SystemConfig::sigma2_w() const { return dbm_to_watt(sigma2_dbm); }

double SystemConfig::p_max_for_snr(double snr_db) const {
  return sigma2_w() * std::pow(10.0, snr_db / 10.0);
}

void SystemConfig::validate() const {
  if (num_aps < 1 || num_ues < 1 || ue_antennas < 1 || ap_antennas < 1) {
    throw ValidationError("all antenna and node counts must be >= 1");
  }
  if (!(eps_fp > 0.0) || !(eps_ccp > 0.0)) {
    throw ValidationError("convergence tolerances must be > 0");
  }
  if (i_fp_max < 0 || i_ccp_max < 1 || i_bs_max < 1) {
    throw ValidationError("iteration caps: i_fp_max >= 0, i_ccp_max >= 1, i_bs_max >= 1");
  }
  if (!(ap_square_m > 0.0) || !(ue_square_m > 0.0)) {
    throw ValidationError("placement squares must have positive side length");
  }
  if (ap_square_m > ue_square_m) {
    throw ValidationError("D_AP must not exceed D_UE");
  }
  if (!(carrier_hz > 0.0)) {
    throw ValidationError("carrier frequency must be > 0");
  }
  if (!(ap_height_m >= 0.0) || !(ue_height_m >= 0.0)) {
    throw ValidationError("heights must be >= 0");
  }
  if (!(sigma2_w() > 0.0) || !std::isfinite(sigma2_w())) {
    throw ValidationError("noise power must convert to a positive finite wattage");
  }
  if (!(p_max_ref_w > 0.0)) {
    throw ValidationError("P_max_ref must be > 0");
  }
  if (!(angular_std_deg >= 0.0) || !(antenna_spacing_wl > 0.0)) {
    throw ValidationError("angular std must be >= 0 and antenna spacing > 0");
  }
}

SystemConfig parse_config(std::string_view text, std::vector<std::string>* warnings) {
  std::map<std::string, std::string, std::less<>> kv;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError(key, "key '" + key + "' given twice");
    }
  }

  for (const auto& key : kRequired) {
    if (!kv.contains(key)) {
      throw ConfigError(key, "missing required key '" + key + "'");
    }
  }
  if (!kv.contains("N_t") && !kv.contains("N")) {
    throw ConfigError("N_t", "missing required key 'N_t' (or 'N')");
  }

  SystemConfig cfg;
  std::size_t explicit_n = 0;
  for (const auto& [key, value] : kv) {
    if (key == "L") cfg.num_aps = parse_count(key, value);
    else if (key == "K") cfg.num_ues = parse_count(key, value);
    else if (key == "M") cfg.ue_antennas = parse_count(key, value);
    else if (key == "N_t") cfg.ap_antennas = parse_count(key, value);
    else if (key == "N") explicit_n = parse_count(key, value);
    else if (key == "h_AP_m") cfg.ap_height_m = parse_double(key, value);
    else if (key == "h_UE_m") cfg.ue_height_m = parse_double(key, value);
    else if (key == "f_c_hz") cfg.carrier_hz = parse_double(key, value);
    else if (key == "D_UE_m") cfg.ue_square_m = parse_double(key, value);
    else if (key == "D_AP_m") cfg.ap_square_m = parse_double(key, value);
    else if (key == "sigma2_dbm") cfg.sigma2_dbm = parse_double(key, value);
    else if (key == "P_max_ref_w") cfg.p_max_ref_w = parse_double(key, value);
    else if (key == "snr_grid_db") cfg.snr_grid_db = parse_list(key, value);
    else if (key == "eps_fp") cfg.eps_fp = parse_double(key, value);
    else if (key == "eps_ccp") cfg.eps_ccp = parse_double(key, value);
    else if (key == "i_fp_max") cfg.i_fp_max = parse_iterations(key, value);
    else if (key == "i_ccp_max") cfg.i_ccp_max = parse_iterations(key, value);
    else if (key == "i_bs_max") cfg.i_bs_max = parse_iterations(key, value);
    else if (key == "angular_std_deg") cfg.angular_std_deg = parse_double(key, value);
    else if (key == "antenna_spacing_wl") cfg.antenna_spacing_wl = parse_double(key, value);
    else if (key == "pathloss_mode") {
      if (value == "normalized") cfg.pathloss_mode = PathlossMode::normalized;
      else if (value == "geometric") cfg.pathloss_mode = PathlossMode::geometric;
      else throw ConfigError(key, "key 'pathloss_mode': expected normalized|geometric");
    } else if (key == "correlation_mode") {
      if (value == "quadrature") cfg.correlation_mode = CorrelationMode::quadrature;
      else if (value == "closed_form") cfg.correlation_mode = CorrelationMode::closed_form;
      else throw ConfigError(key, "key 'correlation_mode': expected quadrature|closed_form");
    } else if (key == "ccp_step") {
      if (value == "safeguarded") cfg.ccp_step = CcpStep::safeguarded;
      else if (value == "plain") cfg.ccp_step = CcpStep::plain;
      else throw ConfigError(key, "key 'ccp_step': expected safeguarded|plain");
    } else if (key == "seed") {
      const long long s = parse_integer(key, value);
      if (s < 0) throw ConfigError(key, "key 'seed': must be >= 0");
      cfg.seed = static_cast<std::uint64_t>(s);
    } else if (warnings != nullptr) {
      warnings->push_back("unknown key '" + key + "' ignored");
    }
  }

  if (explicit_n != 0) {
    if (!kv.contains("N_t")) {
      if (explicit_n % cfg.num_aps != 0) {
        throw ValidationError("N must be a multiple of L");
      }
      cfg.ap_antennas = explicit_n / cfg.num_aps;
    } else if (explicit_n != cfg.total_tx_antennas()) {
      throw ValidationError("N = " + std::to_string(explicit_n) + " but L * N_t = " +
                            std::to_string(cfg.total_tx_antennas()));
    }
  }
  cfg.validate();
  return cfg;
}

SystemConfig load_config(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("", "cannot open config file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), warnings);
}

std::string_view to_string(PathlossMode mode) noexcept {
  return mode == PathlossMode::normalized ? "normalized" : "geometric";
}

std::string_view to_string(CorrelationMode mode) noexcept {
  return mode == CorrelationMode::quadrature ? "quadrature" : "closed_form";
}

std::string_view to_string(CcpStep mode) noexcept {
  return mode == CcpStep::safeguarded ? "safeguarded" : "plain";
}

}  // namespace cfsec
