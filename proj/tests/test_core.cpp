#include <doctest.h>

#include <map>
#include <set>

#include "cachesim/combinatorics.hpp"
#include "cachesim/placement.hpp"
#include "cachesim/rng.hpp"
#include "cachesim/types.hpp"

using namespace cachesim;

TEST_CASE("binomial values") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(50, 25) == 126410606437752ULL);
  CHECK(binomial(4, 5) == 0);
  CHECK(binomial(4, -1) == 0);
}

TEST_CASE("enumerate_subsets is lexicographic and complete") {
  const auto s32 = enumerate_subsets(3, 2);
  REQUIRE(s32.size() == 3);
  CHECK(s32[0] == UserSubset{0, 1});
  CHECK(s32[1] == UserSubset{0, 2});
  CHECK(s32[2] == UserSubset{1, 2});

  CHECK(enumerate_subsets(3, 3) == std::vector<UserSubset>{UserSubset{0, 1, 2}});
  CHECK(enumerate_subsets(5, 2).size() == 10);
  CHECK(enumerate_subsets(4, 0).size() == 1);
  CHECK_THROWS_AS(enumerate_subsets(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_subsets(3, -1), std::invalid_argument);

  // Each subset exactly once; union over sizes is the powerset.
  std::set<std::uint64_t> all;
  for (int s = 0; s <= 4; ++s) {
    for (const auto& sub : enumerate_subsets(4, s)) {
      CHECK(all.insert(sub.mask()).second);
    }
  }
  CHECK(all.size() == 16);
}

TEST_CASE("UserSubset set operations") {
  const UserSubset s{2, 0, 4};
  CHECK(s.members() == std::vector<int>{0, 2, 4});
  CHECK(s.contains(2));
  CHECK(!s.contains(1));
  CHECK(s.with(1) == UserSubset{0, 1, 2, 4});
  CHECK(s.without(2) == UserSubset{0, 4});
  CHECK(s.set_minus(UserSubset{0, 4}) == UserSubset{2});
  CHECK(UserSubset{0, 2}.subset_of(s));
  CHECK(!UserSubset{0, 1}.subset_of(s));
  CHECK(UserSubset::from_mask(s.mask()) == s);
  CHECK_THROWS_AS(UserSubset({1, 1}), std::invalid_argument);
}

TEST_CASE("exclusive_subfile on empty caches") {
  CacheState cache(3, 2, 7);
  const auto everything = exclusive_subfile(cache, 0, UserSubset{});
  CHECK(everything.size() == 7);
  CHECK(exclusive_subfile(cache, 0, UserSubset{0}).empty());
}

TEST_CASE("exclusive_subfile matches a per-symbol membership scan") {
  Rng rng(99);
  SystemConfig cfg = SystemConfig::homogeneous(4, 2, 3, 1.5, 60);
  const CacheState cache = place_decentralized(cfg, rng);
  for (int file = 0; file < 3; ++file) {
    for (int s = 0; s <= 4; ++s) {
      for (const auto& subset : enumerate_subsets(4, s)) {
        // Oracle: independent loop over users and symbols.
        std::vector<int> expect;
        for (int symbol = 0; symbol < 60; ++symbol) {
          bool match = true;
          for (int k = 0; k < 4; ++k) {
            const bool cached = cache.contains(k, file, symbol);
            if (cached != subset.contains(k)) {
              match = false;
              break;
            }
          }
          if (match) expect.push_back(symbol);
        }
        CHECK(exclusive_subfile(cache, file, subset) == expect);
      }
    }
  }
}

TEST_CASE("exclusive subfiles partition the file") {
  Rng rng(7);
  SystemConfig cfg = SystemConfig::homogeneous(3, 2, 3, 1.0, 50);
  const CacheState cache = place_decentralized(cfg, rng);
  for (int file = 0; file < 3; ++file) {
    std::size_t total = 0;
    for (int s = 0; s <= 3; ++s) {
      for (const auto& subset : enumerate_subsets(3, s)) {
        total += exclusive_subfile(cache, file, subset).size();
      }
    }
    CHECK(total == 50);
  }
}

TEST_CASE("subfile_partition_sizes conservation") {
  Rng rng(3);
  SystemConfig cfg = SystemConfig::homogeneous(3, 2, 3, 1.0, 48);
  const CacheState cache = place_decentralized(cfg, rng);
  DemandVector d{{0, 1, 2}};
  const auto sizes = subfile_partition_sizes(cache, d);
  for (int k = 0; k < 3; ++k) {
    int sum = 0;
    for (const auto& [key, size] : sizes) {
      if (key.first == k) {
        CHECK(!key.second.contains(k));
        sum += size;
      }
    }
    CHECK(sum + cache.count(k, d.demand(k)) == 48);
  }
}

TEST_CASE("subfile_partition_sizes single user") {
  CacheState cache(1, 2, 9);
  DemandVector d{{0}};
  const auto sizes = subfile_partition_sizes(cache, d);
  REQUIRE(sizes.size() == 1);
  CHECK(sizes.at({0, UserSubset{}}) == 9);
}

TEST_CASE("subfile_partition_sizes invariant under file relabeling") {
  Rng rng(17);
  SystemConfig cfg = SystemConfig::homogeneous(3, 2, 3, 1.0, 30);
  const CacheState cache = place_decentralized(cfg, rng);
  DemandVector d{{0, 1, 2}};
  const auto base = subfile_partition_sizes(cache, d);

  // Swap files 0 and 1 everywhere.
  CacheState swapped(3, 3, 30);
  for (int k = 0; k < 3; ++k) {
    for (int n = 0; n < 3; ++n) {
      const int target = n == 0 ? 1 : n == 1 ? 0 : n;
      for (int symbol : cache.symbols(k, n)) swapped.insert(k, target, symbol);
    }
  }
  DemandVector d2{{1, 0, 2}};
  CHECK(subfile_partition_sizes(swapped, d2) == base);
}

TEST_CASE("system config validation") {
  SystemConfig cfg = SystemConfig::homogeneous(3, 2, 3, 1.0, 30);
  CHECK_NOTHROW(cfg.validate());
  cfg.cache_files[1] = 4.0;  // > N
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SystemConfig::homogeneous(0, 2, 3, 1.0, 30);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SystemConfig::homogeneous(3, 2, 3, 1.0, 30);
  cfg.power_budget = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("rng determinism and moments") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  Rng rng(7);
  double sum = 0.0, sum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sum2 += g * g;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sum2 / n - 1.0) < 0.02);

  double pmean = 0.0;
  for (int i = 0; i < 20000; ++i) pmean += rng.poisson(5.0);
  CHECK(std::abs(pmean / 20000 - 5.0) < 0.1);

  const auto sample = rng.sample_without_replacement(10, 4);
  CHECK(sample.size() == 4);
  CHECK(std::set<int>(sample.begin(), sample.end()).size() == 4);
}
