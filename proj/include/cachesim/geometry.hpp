#pragma once

#include <Eigen/Dense>

#include "cachesim/rng.hpp"

namespace cachesim {

/// User positions in the plane relative to the base station.
struct Geometry {
  Eigen::Matrix2Xd positions;      // one column per user
  Eigen::Vector2d bs_position = Eigen::Vector2d::Zero();
  Eigen::VectorXd distances;       // Euclidean distance to the BS

  int num_users() const { return static_cast<int>(positions.cols()); }
};

/// Poisson point process on a disk centered at the origin: the point count is
/// Poisson(expected_count) and positions are uniform on the disk.
Geometry sample_ppp_disk(double expected_count, double radius, Rng& rng);

/// Same spatial law conditioned on exactly `count` points.
Geometry sample_disk_fixed(int count, double radius, Rng& rng);

/// Large-scale power gain k0 * (d/d0)^(-exponent). Distances are clamped to
/// 0.01*d0 so users sampled on top of the BS keep a finite gain.
double path_loss_gain(double distance, double k0, double d0, double exponent);

}  // namespace cachesim
