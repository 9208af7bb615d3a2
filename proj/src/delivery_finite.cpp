#include "cachesim/delivery_finite.hpp"

#include <cmath>
#include <stdexcept>

#include "symrate_impl.hpp"

namespace cachesim {

std::vector<FiniteTransmission> deliver_round_finite(
    int round, const DemandVector& demands, const SystemConfig& config,
    const MinifilePartition& partition, MiniFileIndexTable& indices,
    BeamformerCache& beams) {
  const int K = config.num_users;
  const int L = config.num_antennas;
  if (round < 1 || round > K)
    throw std::invalid_argument("deliver_round_finite: round out of range");

  const int group_size = std::min(round + L - 1, K);
  const double norm =
      1.0 / std::sqrt(static_cast<double>(binomial(group_size, round)));

  std::vector<FiniteTransmission> out;
  for (const UserSubset& group : enumerate_subsets(K, group_size)) {
    FiniteTransmission tx;
    tx.group = group;
    tx.round = round;
    tx.norm_factor = norm;
    const auto inners = subsets_of(group, round);
    for (const UserSubset& inner : inners) {
      FiniteStream stream;
      stream.inner = inner;
      stream.beamformer = beams.solve(inner, group.set_minus(inner)).weights;
      for (int k : inner.members()) {
        const UserSubset rest = inner.without(k);
        const int file = demands.demand(k);
        const int index = indices.next(k, rest);
        if (index > partition.piece_count(file, rest))
          throw std::runtime_error(
              "deliver_round_finite: mini-file indices exhausted");
        stream.pieces.push_back({k, file, rest, index});
        stream.length_symbols = std::max(
            stream.length_symbols, partition.piece_size(file, rest, index));
      }
      tx.length_symbols = std::max(tx.length_symbols, stream.length_symbols);
      tx.streams.push_back(std::move(stream));
    }
    for (const UserSubset& inner : inners) {
      for (int k : inner.members()) indices.advance(k, inner.without(k));
    }
    out.push_back(std::move(tx));
  }
  return out;
}

double mac_effective_rate(const UserSubset& group, int user, int round,
                          const SystemConfig& config, double power,
                          LogBase base, BeamformerCache& beams) {
  if (!group.contains(user))
    throw std::invalid_argument("mac_effective_rate: user outside group");
  const int group_size = std::min(round + config.num_antennas - 1,
                                  config.num_users);
  const double streams = static_cast<double>(binomial(group_size, round));
  const double v = static_cast<double>(binomial(group_size - 1, round - 1));

  double sum = 0.0;
  double worst = std::numeric_limits<double>::infinity();
  for (const UserSubset& inner : subsets_of(group, round)) {
    if (!inner.contains(user)) continue;
    const double g = beams.gain(user, inner, group.set_minus(inner));
    const double snr = power / config.noise_power * g * g / streams;
    sum += snr;
    worst = std::min(worst, snr);
  }
  const double sum_rate = rate_of(sum, base);
  const double per_stream = v * rate_of(worst, base);
  return std::min(sum_rate, per_stream);
}

double rate_finite_common(const UserSubset& group, int round,
                          const SystemConfig& config, double power,
                          LogBase base, BeamformerCache& beams) {
  double worst = std::numeric_limits<double>::infinity();
  for (int k : group.members()) {
    worst = std::min(worst, mac_effective_rate(group, k, round, config, power,
                                               base, beams));
  }
  return worst;
}

SymmetricRate symrate_finite(const CacheState& cache,
                             const DemandVector& demands,
                             const SystemConfig& config,
                             const SymrateOptions& options,
                             BeamformerCache& beams) {
  return detail::symrate_double_sum(
      cache, demands, config, options, [&](const UserSubset& group, int s) {
        return rate_finite_common(group, s, config, options.power,
                                  options.base, beams);
      });
}

std::vector<std::uint8_t> xor_payloads(
    const std::vector<std::vector<std::uint8_t>>& pieces) {
  std::size_t longest = 0;
  for (const auto& p : pieces) longest = std::max(longest, p.size());
  std::vector<std::uint8_t> out(longest, 0);
  for (const auto& p : pieces) {
    for (std::size_t i = 0; i < p.size(); ++i) out[i] ^= p[i];
  }
  return out;
}

std::vector<std::uint8_t> xor_decode(
    const std::vector<std::uint8_t>& payload,
    const std::vector<std::vector<std::uint8_t>>& known_pieces,
    std::size_t target_length) {
  std::vector<std::uint8_t> out = payload;
  for (const auto& p : known_pieces) {
    if (p.size() > out.size()) out.resize(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) out[i] ^= p[i];
  }
  out.resize(target_length, 0);
  return out;
}

}  // namespace cachesim
