#include "cachesim/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace cachesim {

namespace {

Geometry make_uniform_disk(int count, double radius, Rng& rng) {
  Geometry g;
  g.positions.resize(2, count);
  g.distances.resize(count);
  for (int i = 0; i < count; ++i) {
    const double r = radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * 3.14159265358979323846 * rng.uniform();
    g.positions(0, i) = r * std::cos(theta);
    g.positions(1, i) = r * std::sin(theta);
    g.distances(i) = r;
  }
  return g;
}

}  // namespace

Geometry sample_ppp_disk(double expected_count, double radius, Rng& rng) {
  if (!(expected_count > 0.0) || !(radius > 0.0))
    throw std::invalid_argument("sample_ppp_disk: positive parameters required");
  const int count = rng.poisson(expected_count);
  return make_uniform_disk(count, radius, rng);
}

Geometry sample_disk_fixed(int count, double radius, Rng& rng) {
  if (count < 0 || !(radius > 0.0))
    throw std::invalid_argument("sample_disk_fixed: bad parameters");
  return make_uniform_disk(count, radius, rng);
}

double path_loss_gain(double distance, double k0, double d0, double exponent) {
  if (distance < 0.0 || !(k0 > 0.0) || !(d0 > 0.0) || !(exponent > 0.0))
    throw std::invalid_argument("path_loss_gain: bad parameters");
  const double d = std::max(distance, 0.01 * d0);
  return k0 * std::pow(d / d0, -exponent);
}

}  // namespace cachesim
