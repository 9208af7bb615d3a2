#pragma once

#include <Eigen/Dense>

#include "cachesim/geometry.hpp"
#include "cachesim/rng.hpp"
#include "cachesim/types.hpp"

namespace cachesim {

/// One downlink channel draw. Column k of H is user k's L-dimensional channel,
/// already scaled by sqrt of the large-scale gain.
struct ChannelRealization {
  CMatrix H;                // L x K
  Eigen::VectorXd gains;    // per-user large-scale power gain
};

/// i.i.d. Rayleigh fading: entries of column k are CN(0, gains[k]).
ChannelRealization sample_rayleigh(const SystemConfig& config,
                                   const Eigen::VectorXd& gains, Rng& rng);

/// Gains from geometry through the path-loss law.
Eigen::VectorXd path_loss_gains(const Geometry& geometry, double k0, double d0,
                                double exponent);

}  // namespace cachesim
