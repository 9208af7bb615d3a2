#include "cachesim/delivery_complex.hpp"

#include <cmath>
#include <stdexcept>

#include "symrate_impl.hpp"

namespace cachesim {

Eigen::MatrixXcd dft_unitary(int v) {
  if (v < 1) throw std::invalid_argument("dft_unitary: v must be positive");
  Eigen::MatrixXcd u(v, v);
  const double scale = 1.0 / std::sqrt(static_cast<double>(v));
  for (int r = 0; r < v; ++r) {
    for (int c = 0; c < v; ++c) {
      const double angle = -2.0 * 3.14159265358979323846 * r * c / v;
      u(r, c) = scale * Complex(std::cos(angle), std::sin(angle));
    }
  }
  return u;
}

Eigen::RowVectorXcd combo_coefficients(int v, int w) {
  if (w < 1 || w > v)
    throw std::invalid_argument("combo_coefficients: w out of range");
  return dft_unitary(v).row(w - 1);
}

std::vector<ComplexTransmission> deliver_round_complex(
    int round, const DemandVector& demands, const SystemConfig& config,
    const MinifilePartition& partition, MiniFileIndexTable& indices,
    BeamformerCache& beams) {
  const int K = config.num_users;
  const int L = config.num_antennas;
  if (round < 1 || round > K)
    throw std::invalid_argument("deliver_round_complex: round out of range");

  const int group_size = std::min(round + L - 1, K);
  const int v = static_cast<int>(binomial(group_size - 1, round - 1));
  const double norm =
      1.0 / std::sqrt(static_cast<double>(round) *
                      static_cast<double>(binomial(group_size, round)));
  const Eigen::MatrixXcd unitary = dft_unitary(v);
  const double coeff_scale = std::sqrt(static_cast<double>(v));

  std::vector<ComplexTransmission> out;
  for (const UserSubset& group : enumerate_subsets(K, group_size)) {
    const auto inners = subsets_of(group, round);
    // Lexicographic rank of S among the sets containing k, per user: this is
    // the column of the unitary that k's mini-file rides in.
    std::map<std::pair<int, std::uint64_t>, int> rank;
    {
      std::map<int, int> seen;
      for (const UserSubset& inner : inners) {
        for (int k : inner.members()) {
          rank[{k, inner.mask()}] = seen[k]++;
        }
      }
    }
    for (int w = 1; w <= v; ++w) {
      ComplexTransmission tx;
      tx.group = group;
      tx.round = round;
      tx.combo_index = w;
      tx.combo_count = v;
      tx.norm_factor = norm;
      for (const UserSubset& inner : inners) {
        ComplexStream stream;
        stream.inner = inner;
        stream.beamformer = beams.solve(inner, group.set_minus(inner)).weights;
        for (int k : inner.members()) {
          const UserSubset rest = inner.without(k);
          const int file = demands.demand(k);
          const int index = indices.next(k, rest);
          if (index > partition.piece_count(file, rest))
            throw std::runtime_error(
                "deliver_round_complex: mini-file indices exhausted");
          const Complex coeff =
              coeff_scale * unitary(w - 1, rank.at({k, inner.mask()}));
          stream.entries.push_back({{k, file, rest, index}, coeff});
          tx.length_symbols = std::max(
              tx.length_symbols, partition.piece_size(file, rest, index));
        }
        tx.streams.push_back(std::move(stream));
      }
      out.push_back(std::move(tx));
    }
    for (const UserSubset& inner : inners) {
      for (int k : inner.members()) indices.advance(k, inner.without(k));
    }
  }
  return out;
}

double rate_complex_user(const UserSubset& group, int user, int round,
                         const SystemConfig& config, double power, LogBase base,
                         BeamformerCache& beams) {
  if (!group.contains(user))
    throw std::invalid_argument("rate_complex_user: user outside group");
  const int denom = std::min(round + config.num_antennas - 1, config.num_users);
  double worst = std::numeric_limits<double>::infinity();
  for (const UserSubset& inner : subsets_of(group, round)) {
    if (!inner.contains(user)) continue;
    const double g = beams.gain(user, inner, group.set_minus(inner));
    worst = std::min(worst, g * g);
  }
  const double snr = power / config.noise_power * worst / denom;
  return rate_of(snr, base);
}

double rate_complex_common(const UserSubset& group, int round,
                           const SystemConfig& config, double power,
                           LogBase base, BeamformerCache& beams) {
  double worst = std::numeric_limits<double>::infinity();
  for (int k : group.members()) {
    worst = std::min(worst, rate_complex_user(group, k, round, config, power,
                                              base, beams));
  }
  return worst;
}

SymmetricRate symrate_complex(const CacheState& cache,
                              const DemandVector& demands,
                              const SystemConfig& config,
                              const SymrateOptions& options,
                              BeamformerCache& beams) {
  return detail::symrate_double_sum(
      cache, demands, config, options, [&](const UserSubset& group, int s) {
        return rate_complex_common(group, s, config, options.power,
                                   options.base, beams);
      });
}

}  // namespace cachesim
