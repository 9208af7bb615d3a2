#pragma once

// Shared walker for the two closed-form symmetric-rate expressions. The time
// charged per group B in round s is v * length / R(B, s): v sequential
// transmissions, each as long as the largest mini-file it mixes. Empirical
// masses replay the exact index bookkeeping; analytic masses use the
// high-probability fractions with the according split counts.

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "cachesim/combinatorics.hpp"
#include "cachesim/delivery_complex.hpp"
#include "cachesim/placement.hpp"
#include "cachesim/types.hpp"

namespace cachesim::detail {

template <typename CommonRateFn>
SymmetricRate symrate_double_sum(const CacheState& cache,
                                 const DemandVector& demands,
                                 const SystemConfig& config,
                                 const SymrateOptions& options,
                                 CommonRateFn&& common_rate) {
  const int K = config.num_users;
  const int L = config.num_antennas;
  const double f = config.symbols_per_file;

  double q = 0.0;
  if (options.masses == MassModel::Analytic) {
    q = config.uniform_cache_files() / config.num_files;
  }
  MinifilePartition partition(cache, config);
  MiniFileIndexTable indices;

  SymmetricRate out;
  double total_time = 0.0;
  bool any = false;
  for (int s = 1; s <= K; ++s) {
    const int group_size = std::min(s + L - 1, K);
    const std::uint64_t v = binomial(group_size - 1, s - 1);
    const std::uint64_t split = s <= K - L + 1 ? binomial(K - s, L - 1) : 1;
    const double analytic_fraction =
        options.masses == MassModel::Analytic ? expected_fraction(q, K, s) : 0.0;
    for (const UserSubset& group : enumerate_subsets(K, group_size)) {
      double block_time = 0.0;
      if (options.masses == MassModel::Analytic) {
        block_time = analytic_fraction * static_cast<double>(v) /
                     static_cast<double>(split);
      } else {
        int longest = 0;
        for (const UserSubset& inner : subsets_of(group, s)) {
          for (int k : inner.members()) {
            const UserSubset rest = inner.without(k);
            const int file = demands.demand(k);
            const int index = indices.next(k, rest);
            if (index > partition.piece_count(file, rest))
              throw std::runtime_error(
                  "symmetric rate: mini-file indices exhausted");
            longest = std::max(longest, partition.piece_size(file, rest, index));
          }
        }
        for (const UserSubset& inner : subsets_of(group, s)) {
          for (int k : inner.members()) indices.advance(k, inner.without(k));
        }
        block_time = static_cast<double>(v) * longest / f;
      }
      if (block_time <= 0.0) continue;
      any = true;
      const double rate = common_rate(group, s);
      if (rate <= 0.0) {
        out.zero_rate = true;
        out.value = 0.0;
        return out;
      }
      total_time += block_time / rate;
    }
  }
  if (!any) {
    out.all_cached = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  out.value = 1.0 / total_time;
  return out;
}

}  // namespace cachesim::detail
