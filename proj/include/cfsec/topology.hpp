// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cfsec/config.hpp"
#include "cfsec/rng.hpp"

namespace cfsec {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Point3&) const = default;
};

struct Topology {
  std::vector<Point3> ap_positions;
  std::vector<Point3> ue_positions;
  Eigen::MatrixXd distances;  // L x K, 3-D metres
};

/// APs evenly spaced on the perimeter of the D_AP square starting at a corner
/// (the four corners when L = 4); UEs i.i.d. uniform over the D_UE square.
/// Both squares share the origin.
Topology place_nodes(const SystemConfig& cfg, Rng& rng);

/// Rebuilds `distances` from the positions.
void refresh_distances(Topology& topo);

/// Linear large-scale gain beta(d). Geometric mode uses the log-distance law
/// beta_dB = -30.5 - 36.7 log10(d); normalized mode returns 1.
/// Throws DomainError for d <= 0.
double large_scale_gain(double distance_m, const SystemConfig& cfg);

/// Planar bearing from `from` to `to`, radians.
double bearing(const Point3& from, const Point3& to) noexcept;

}  // namespace cfsec
