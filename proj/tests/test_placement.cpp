#include <doctest.h>

#include <cmath>
#include <set>

#include "cachesim/placement.hpp"
#include "cachesim/rng.hpp"

using namespace cachesim;

TEST_CASE("centralized placement K=3 M=1") {
  SystemConfig cfg = SystemConfig::homogeneous(3, 2, 3, 1.0, 30);
  const CacheState cache = place_centralized(cfg);
  // t = 1: user k caches subfile {k} of every file, 10 symbols each.
  for (int k = 0; k < 3; ++k) {
    for (int n = 0; n < 3; ++n) CHECK(cache.count(k, n) == 10);
  }
  // Every symbol cached at exactly one user, subfiles aligned across users.
  for (int n = 0; n < 3; ++n) {
    for (int s = 0; s < 30; ++s) {
      const auto mask = cache.cacher_mask(n, s);
      CHECK(UserSubset::from_mask(mask).size() == 1);
    }
  }
}

TEST_CASE("centralized placement fills the cache exactly") {
  SystemConfig cfg = SystemConfig::homogeneous(4, 2, 2, 1.0, 12);
  // t = 2, C(4,2) = 6 divides 12; per user: N * C(K-1,t-1) subfiles.
  const CacheState cache = place_centralized(cfg);
  for (int k = 0; k < 4; ++k) {
    // M*f = 12 symbols per user in total.
    CHECK(cache.total_count(k) == 12);
    // Each user caches C(3,1)/C(4,2) = 1/2 of every file.
    for (int n = 0; n < 2; ++n) CHECK(cache.count(k, n) == 6);
  }
  for (int n = 0; n < 2; ++n) {
    for (int s = 0; s < 12; ++s) {
      CHECK(UserSubset::from_mask(cache.cacher_mask(n, s)).size() == 2);
    }
  }
}

TEST_CASE("centralized placement M=N caches everything") {
  SystemConfig cfg = SystemConfig::homogeneous(3, 2, 2, 2.0, 10);
  const CacheState cache = place_centralized(cfg);
  for (int k = 0; k < 3; ++k) {
    for (int n = 0; n < 2; ++n) CHECK(cache.count(k, n) == 10);
  }
}

TEST_CASE("centralized placement rejects fractional t and bad f") {
  SystemConfig cfg = SystemConfig::homogeneous(3, 2, 2, 1.0, 30);  // t = 1.5
  CHECK_THROWS_AS(place_centralized(cfg), std::invalid_argument);
  cfg = SystemConfig::homogeneous(3, 2, 3, 1.0, 31);  // C(3,1) = 3 does not divide 31
  CHECK_THROWS_AS(place_centralized(cfg), std::invalid_argument);
}

TEST_CASE("decentralized placement budget and determinism") {
  SystemConfig cfg = SystemConfig::homogeneous(3, 2, 3, 1.0, 100);
  Rng r1(5), r2(5), r3(6);
  const CacheState a = place_decentralized(cfg, r1);
  const CacheState b = place_decentralized(cfg, r2);
  const CacheState c = place_decentralized(cfg, r3);
  bool same_seed_equal = true, diff_seed_equal = true;
  for (int k = 0; k < 3; ++k) {
    for (int n = 0; n < 3; ++n) {
      CHECK(a.count(k, n) == 33);  // floor(1*100/3)
      same_seed_equal = same_seed_equal && a.symbols(k, n) == b.symbols(k, n);
      diff_seed_equal = diff_seed_equal && a.symbols(k, n) == c.symbols(k, n);
    }
  }
  CHECK(same_seed_equal);
  CHECK(!diff_seed_equal);
}

TEST_CASE("decentralized placement edge cases") {
  SystemConfig cfg = SystemConfig::homogeneous(2, 1, 2, 0.0, 10);
  Rng rng(1);
  const CacheState empty = place_decentralized(cfg, rng);
  CHECK(empty.total_count(0) == 0);

  cfg = SystemConfig::homogeneous(2, 1, 2, 2.0, 10);
  const CacheState full = place_decentralized(cfg, rng);
  for (int k = 0; k < 2; ++k) {
    for (int n = 0; n < 2; ++n) CHECK(full.count(k, n) == 10);
  }
}

TEST_CASE("heterogeneous decentralized placement") {
  SystemConfig cfg = SystemConfig::homogeneous(3, 2, 4, 1.0, 40);
  cfg.cache_files = {0.5, 1.0, 2.5};
  Rng rng(11);
  const CacheState cache = place_decentralized(cfg, rng);
  CHECK(cache.count(0, 0) == 5);   // floor(0.5*40/4)
  CHECK(cache.count(1, 0) == 10);
  CHECK(cache.count(2, 0) == 25);
}

TEST_CASE("expected_fraction values") {
  CHECK(expected_fraction(1.0 / 3.0, 3, 1) == doctest::Approx(8.0 / 27.0));
  CHECK(expected_fraction(0.0, 3, 1) == doctest::Approx(1.0));
  CHECK(expected_fraction(0.0, 3, 2) == doctest::Approx(0.0));
  CHECK_THROWS_AS(expected_fraction(0.5, 3, 0), std::invalid_argument);
}

TEST_CASE("decentralized masses concentrate to the binomial law") {
  const int f = 30000;
  SystemConfig cfg = SystemConfig::homogeneous(3, 2, 3, 1.0, f);
  Rng rng(21);
  const CacheState cache = place_decentralized(cfg, rng);
  for (int s = 1; s <= 3; ++s) {
    // Mass observed by a demander of file 0 across subsets of size s-1.
    double mass = 0.0;
    for (const auto& subset : enumerate_subsets(3, s - 1)) {
      if (subset.contains(0)) continue;
      mass += static_cast<double>(exclusive_subfile(cache, 0, subset).size()) / f;
    }
    const double expect = static_cast<double>(binomial(2, s - 1)) *
                          expected_fraction(1.0 / 3.0, 3, s);
    CHECK(mass == doctest::Approx(expect).epsilon(0.05));
  }
}

TEST_CASE("minifile partition counts and remainders") {
  // L=1: no split regardless of sigma.
  CHECK(MinifilePartition::count_for(4, 1, 0) == 1);
  CHECK(MinifilePartition::count_for(4, 1, 2) == 1);
  // K=3, L=2: sigma=0 splits in two, sigma=1 stays whole (Example A shape).
  CHECK(MinifilePartition::count_for(3, 2, 0) == 2);
  CHECK(MinifilePartition::count_for(3, 2, 1) == 1);
  CHECK(MinifilePartition::count_for(3, 2, 2) == 1);
  // K=5, L=2.
  CHECK(MinifilePartition::count_for(5, 2, 0) == 4);
  CHECK(MinifilePartition::count_for(5, 2, 1) == 3);
  CHECK(MinifilePartition::count_for(5, 2, 3) == 1);

  SystemConfig cfg = SystemConfig::homogeneous(3, 2, 2, 1.0, 61);
  Rng rng(8);
  const CacheState cache = place_decentralized(cfg, rng);
  const MinifilePartition parts(cache, cfg);
  for (int n = 0; n < 2; ++n) {
    const auto whole = exclusive_subfile(cache, n, UserSubset{});
    const int count = parts.piece_count(n, UserSubset{});
    REQUIRE(count == 2);
    std::vector<int> glued;
    for (int j = 1; j <= count; ++j) {
      const auto& piece = parts.piece(n, UserSubset{}, j);
      glued.insert(glued.end(), piece.begin(), piece.end());
    }
    CHECK(glued == whole);
    CHECK(std::abs(parts.piece_size(n, UserSubset{}, 1) -
                   parts.piece_size(n, UserSubset{}, 2)) <= 1);
  }
  CHECK_THROWS_AS(parts.piece(0, UserSubset{}, 3), std::out_of_range);
  CHECK_THROWS_AS(parts.piece(0, UserSubset{}, 0), std::out_of_range);
}

TEST_CASE("minifile index table") {
  MiniFileIndexTable table;
  const UserSubset t{1, 2};
  CHECK(table.next(0, t) == 1);
  table.advance(0, t);
  CHECK(table.next(0, t) == 2);
  CHECK(table.consumed(0, t) == 1);
  CHECK(table.next(1, t) == 1);
}
