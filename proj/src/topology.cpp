// SPDX-License-Identifier: Apache-2.0
#include "cfsec/topology.hpp"

#include <cmath>

#include "cfsec/errors.hpp"

namespace cfsec {

namespace {

Point3 perimeter_point(double side, double s, double z) {
  const double h = side / 2.0;
  // Walk counter-clockwise from (-h, -h).
  if (s < side) return {-h + s, -h, z};
  s -= side;
  if (s < side) return {h, -h + s, z};
  s -= side;
  if (s < side) return {h - s, h, z};
  s -= side;
  return {-h, h - s, z};
}

}  // namespace

Topology place_nodes(const SystemConfig& cfg, Rng& rng) {
  Topology topo;
  const double step = 4.0 * cfg.ap_square_m / static_cast<double>(cfg.num_aps);
  topo.ap_positions.reserve(cfg.num_aps);
  for (std::size_t l = 0; l < cfg.num_aps; ++l) {
    topo.ap_positions.push_back(
        perimeter_point(cfg.ap_square_m, step * static_cast<double>(l), cfg.ap_height_m));
  }
  std::uniform_real_distribution<double> coord(-cfg.ue_square_m / 2.0, cfg.ue_square_m / 2.0);
  topo.ue_positions.reserve(cfg.num_ues);
  for (std::size_t k = 0; k < cfg.num_ues; ++k) {
    const double x = coord(rng);
    const double y = coord(rng);
    topo.ue_positions.push_back({x, y, cfg.ue_height_m});
  }
  refresh_distances(topo);
  return topo;
}

void refresh_distances(Topology& topo) {
  const auto L = static_cast<Eigen::Index>(topo.ap_positions.size());
  const auto K = static_cast<Eigen::Index>(topo.ue_positions.size());
  topo.distances.resize(L, K);
  for (Eigen::Index l = 0; l < L; ++l) {
    for (Eigen::Index k = 0; k < K; ++k) {
      const auto& a = topo.ap_positions[static_cast<std::size_t>(l)];
      const auto& u = topo.ue_positions[static_cast<std::size_t>(k)];
      topo.distances(l, k) = std::hypot(a.x - u.x, a.y - u.y, a.z - u.z);
    }
  }
}

double large_scale_gain(double distance_m, const SystemConfig& cfg) {
  if (!(distance_m > 0.0)) {
    throw DomainError("large_scale_gain: distance must be > 0");
  }
  if (cfg.pathloss_mode == PathlossMode::normalized) {
    return 1.0;
  }
  const double gain_db = -30.5 - 36.7 * std::log10(distance_m);
  return std::pow(10.0, gain_db / 10.0);
}

double bearing(const Point3& from, const Point3& to) noexcept {
  return std::atan2(to.y - from.y, to.x - from.x);
}

}  // namespace cfsec
