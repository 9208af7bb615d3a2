#include "cachesim/placement.hpp"

#include <cmath>
#include <stdexcept>

namespace cachesim {

CacheState place_centralized(const SystemConfig& config) {
  config.validate();
  const int t = config.centralized_t();
  if (t < 0)
    throw std::invalid_argument(
        "place_centralized: t = M*K/N must be an integer");
  const std::uint64_t parts = binomial(config.num_users, t);
  if (config.symbols_per_file % parts != 0)
    throw std::invalid_argument(
        "place_centralized: C(K,t) must divide the symbols per file");
  const int subfile_len =
      config.symbols_per_file / static_cast<int>(parts);

  CacheState cache(config.num_users, config.num_files, config.symbols_per_file);
  const auto subsets = enumerate_subsets(config.num_users, t);
  for (int file = 0; file < config.num_files; ++file) {
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      const int begin = static_cast<int>(i) * subfile_len;
      for (int user : subsets[i].members()) {
        for (int s = begin; s < begin + subfile_len; ++s) {
          cache.insert(user, file, s);
        }
      }
    }
  }
  return cache;
}

CacheState place_decentralized(const SystemConfig& config, Rng& rng) {
  config.validate();
  CacheState cache(config.num_users, config.num_files, config.symbols_per_file);
  for (int user = 0; user < config.num_users; ++user) {
    const int per_file = static_cast<int>(
        std::floor(config.cache_files[static_cast<std::size_t>(user)] *
                   config.symbols_per_file / config.num_files));
    for (int file = 0; file < config.num_files; ++file) {
      for (int s : rng.sample_without_replacement(config.symbols_per_file,
                                                  per_file)) {
        cache.insert(user, file, s);
      }
    }
  }
  return cache;
}

double expected_fraction(double m_over_n, int num_users, int subset_size) {
  if (m_over_n < 0.0 || m_over_n > 1.0)
    throw std::invalid_argument("expected_fraction: M/N out of [0,1]");
  if (subset_size < 1 || subset_size > num_users)
    throw std::invalid_argument("expected_fraction: subset size out of range");
  return std::pow(m_over_n, subset_size - 1) *
         std::pow(1.0 - m_over_n, num_users - subset_size + 1);
}

int MinifilePartition::count_for(int num_users, int num_antennas,
                                 int cached_count) {
  if (cached_count <= num_users - num_antennas) {
    return static_cast<int>(
        binomial(num_users - cached_count - 1, num_antennas - 1));
  }
  return 1;
}

MinifilePartition::MinifilePartition(const CacheState& cache,
                                     const SystemConfig& config)
    : num_users_(config.num_users), num_antennas_(config.num_antennas) {
  const int K = cache.num_users();
  // Bucket the symbols of every file by their exact cacher set, then split.
  for (int file = 0; file < cache.num_files(); ++file) {
    std::map<std::uint64_t, std::vector<int>> buckets;
    for (int symbol = 0; symbol < cache.symbols_per_file(); ++symbol) {
      buckets[cache.cacher_mask(file, symbol)].push_back(symbol);
    }
    for (auto& [mask, symbols] : buckets) {
      const int sigma = static_cast<int>(UserSubset::from_mask(mask).size());
      const int count = count_for(K, num_antennas_, sigma);
      std::vector<std::vector<int>> split(static_cast<std::size_t>(count));
      const int total = static_cast<int>(symbols.size());
      const int base = total / count;
      const int extra = total % count;
      int cursor = 0;
      for (int j = 0; j < count; ++j) {
        const int len = base + (j >= count - extra ? 1 : 0);
        split[static_cast<std::size_t>(j)].assign(
            symbols.begin() + cursor, symbols.begin() + cursor + len);
        cursor += len;
      }
      pieces_[{file, mask}] = std::move(split);
    }
  }
}

int MinifilePartition::piece_count(int file, const UserSubset& cached_at) const {
  auto it = pieces_.find({file, cached_at.mask()});
  if (it == pieces_.end())
    return count_for(num_users_, num_antennas_, cached_at.size());
  return static_cast<int>(it->second.size());
}

const std::vector<int>& MinifilePartition::piece(int file,
                                                 const UserSubset& cached_at,
                                                 int index) const {
  static const std::vector<int> kEmpty;
  auto it = pieces_.find({file, cached_at.mask()});
  if (it == pieces_.end()) {
    if (index < 1 || index > count_for(num_users_, num_antennas_, cached_at.size()))
      throw std::out_of_range("MinifilePartition: piece index out of range");
    return kEmpty;  // structurally present but no symbols landed there
  }
  if (index < 1 || index > static_cast<int>(it->second.size()))
    throw std::out_of_range("MinifilePartition: piece index out of range");
  return it->second[static_cast<std::size_t>(index - 1)];
}

int MinifilePartition::piece_size(int file, const UserSubset& cached_at,
                                  int index) const {
  return static_cast<int>(piece(file, cached_at, index).size());
}

int MiniFileIndexTable::next(int user, const UserSubset& cached_at) const {
  auto it = next_.find({user, cached_at.mask()});
  return it == next_.end() ? 1 : it->second;
}

void MiniFileIndexTable::advance(int user, const UserSubset& cached_at) {
  auto [it, inserted] = next_.try_emplace({user, cached_at.mask()}, 2);
  if (!inserted) ++it->second;
}

int MiniFileIndexTable::consumed(int user, const UserSubset& cached_at) const {
  return next(user, cached_at) - 1;
}

}  // namespace cachesim
