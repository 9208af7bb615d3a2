#include "cachesim/delivery_maxmin.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace cachesim {

namespace {

/// Per demander, symbols of its file grouped by exact cacher set.
std::vector<std::map<std::uint64_t, std::vector<int>>> group_needed_symbols(
    const CacheState& cache, const DemandVector& demands) {
  const int K = cache.num_users();
  std::vector<std::map<std::uint64_t, std::vector<int>>> grouped(
      static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    const int file = demands.demand(k);
    for (int symbol = 0; symbol < cache.symbols_per_file(); ++symbol) {
      const std::uint64_t mask = cache.cacher_mask(file, symbol);
      if (mask & (1ULL << k)) continue;
      grouped[static_cast<std::size_t>(k)][mask].push_back(symbol);
    }
  }
  return grouped;
}

}  // namespace

std::vector<Codeword> build_codewords_decentralized(const CacheState& cache,
                                                    const DemandVector& demands) {
  const int K = cache.num_users();
  const double f = cache.symbols_per_file();
  const auto grouped = group_needed_symbols(cache, demands);

  std::vector<Codeword> out;
  for (int s = 1; s <= K; ++s) {
    for (const UserSubset& target : enumerate_subsets(K, s)) {
      Codeword cw;
      cw.target = target;
      for (int k : target.members()) {
        const std::uint64_t rest = target.without(k).mask();
        auto it = grouped[static_cast<std::size_t>(k)].find(rest);
        if (it == grouped[static_cast<std::size_t>(k)].end()) continue;
        cw.pieces.push_back({k, demands.demand(k), it->second});
        cw.length_symbols =
            std::max(cw.length_symbols, static_cast<int>(it->second.size()));
      }
      if (cw.length_symbols == 0) continue;
      cw.length_fraction = cw.length_symbols / f;
      out.push_back(std::move(cw));
    }
  }
  return out;
}

std::vector<Codeword> build_codewords_centralized(const CacheState& cache,
                                                  const SystemConfig& config,
                                                  const DemandVector& demands) {
  const int t = config.centralized_t();
  if (t < 0)
    throw std::invalid_argument("build_codewords_centralized: t not integral");
  for (int symbol = 0; symbol < cache.symbols_per_file(); ++symbol) {
    const auto mask = cache.cacher_mask(0, symbol);
    if (static_cast<int>(UserSubset::from_mask(mask).size()) != t)
      throw std::invalid_argument(
          "build_codewords_centralized: cache is not a centralized placement");
  }
  if (t == config.num_users) return {};  // everything cached everywhere

  const int K = config.num_users;
  const double f = cache.symbols_per_file();
  const auto grouped = group_needed_symbols(cache, demands);

  std::vector<Codeword> out;
  for (const UserSubset& target : enumerate_subsets(K, t + 1)) {
    Codeword cw;
    cw.target = target;
    for (int k : target.members()) {
      const std::uint64_t rest = target.without(k).mask();
      auto it = grouped[static_cast<std::size_t>(k)].find(rest);
      if (it == grouped[static_cast<std::size_t>(k)].end()) continue;
      cw.pieces.push_back({k, demands.demand(k), it->second});
      cw.length_symbols =
          std::max(cw.length_symbols, static_cast<int>(it->second.size()));
    }
    cw.length_fraction = cw.length_symbols / f;
    out.push_back(std::move(cw));
  }
  return out;
}

double multicast_rate(const UserSubset& targets, double power, LogBase base,
                      BeamformerCache& beams) {
  if (targets.empty())
    throw std::invalid_argument("multicast_rate: empty target set");
  const BeamformerResult& r = beams.solve(targets, UserSubset{});
  return rate_of(r.min_gain * r.min_gain * power, base);
}

SymmetricRate symrate_maxmin(const std::vector<Codeword>& codewords,
                             double power, LogBase base,
                             BeamformerCache& beams) {
  SymmetricRate out;
  double total_time = 0.0;
  bool any = false;
  for (const Codeword& cw : codewords) {
    if (cw.length_fraction <= 0.0) continue;
    any = true;
    const double r = multicast_rate(cw.target, power, base, beams);
    if (r <= 0.0) {
      out.zero_rate = true;
      out.value = 0.0;
      return out;
    }
    total_time += cw.length_fraction / r;
  }
  if (!any) {
    out.all_cached = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  out.value = 1.0 / total_time;
  return out;
}

}  // namespace cachesim
