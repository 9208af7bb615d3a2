#include "cachesim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cachesim {

ChannelRealization sample_rayleigh(const SystemConfig& config,
                                   const Eigen::VectorXd& gains, Rng& rng) {
  if (gains.size() != config.num_users)
    throw std::invalid_argument("sample_rayleigh: gain vector length != K");
  ChannelRealization out;
  out.gains = gains;
  out.H.resize(config.num_antennas, config.num_users);
  for (int k = 0; k < config.num_users; ++k) {
    const double scale = std::sqrt(gains(k));
    for (int a = 0; a < config.num_antennas; ++a) {
      out.H(a, k) = scale * rng.cgaussian();
    }
  }
  return out;
}

Eigen::VectorXd path_loss_gains(const Geometry& geometry, double k0, double d0,
                                double exponent) {
  Eigen::VectorXd g(geometry.num_users());
  for (int k = 0; k < geometry.num_users(); ++k) {
    g(k) = path_loss_gain(geometry.distances(k), k0, d0, exponent);
  }
  return g;
}

}  // namespace cachesim
