#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cachesim/combinatorics.hpp"
#include "cachesim/rng.hpp"
#include "cachesim/types.hpp"

namespace cachesim {

/// Centralized placement: t = M*K/N must be an integer and C(K,t) must divide
/// f. Each file splits into C(K,t) equal subfiles, one per size-t subset in
/// lexicographic order, and subfile T is cached at exactly the users in T.
CacheState place_centralized(const SystemConfig& config);

/// Decentralized placement: every user independently caches floor(M_k*f/N)
/// uniformly chosen symbols of every file.
CacheState place_decentralized(const SystemConfig& config, Rng& rng);

/// High-probability fraction of a file that lands in the codeword for a target
/// subset of size s: (M/N)^(s-1) * (1-M/N)^(K-s+1). The exponent uses K, the
/// convention consistent across the closed-form rate expressions.
double expected_fraction(double m_over_n, int num_users, int subset_size);

/// Split of every exclusive subfile into equal mini-files. A subfile cached at
/// sigma users splits into C(K-sigma-1, L-1) pieces when sigma <= K-L and is
/// used whole otherwise. Piece sizes differ by at most one symbol; the longer
/// pieces sit at the tail.
class MinifilePartition {
 public:
  MinifilePartition(const CacheState& cache, const SystemConfig& config);

  static int count_for(int num_users, int num_antennas, int cached_count);

  /// Pieces of the (file, cached-at-subset) subfile; `index` is 1-based.
  int piece_count(int file, const UserSubset& cached_at) const;
  const std::vector<int>& piece(int file, const UserSubset& cached_at,
                                int index) const;
  int piece_size(int file, const UserSubset& cached_at, int index) const;

 private:
  std::map<std::pair<int, std::uint64_t>, std::vector<std::vector<int>>> pieces_;
  int num_users_;
  int num_antennas_;
};

/// Fresh mini-file counters N(k, T), one per (user, cached-at-subset) pair.
/// Counters start at 1 and only move forward.
class MiniFileIndexTable {
 public:
  int next(int user, const UserSubset& cached_at) const;
  void advance(int user, const UserSubset& cached_at);
  /// Consumed count so far = next - 1.
  int consumed(int user, const UserSubset& cached_at) const;

 private:
  std::map<std::pair<int, std::uint64_t>, int> next_;
};

}  // namespace cachesim
