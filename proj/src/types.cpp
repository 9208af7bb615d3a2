#include "cachesim/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace cachesim {

void SystemConfig::validate() const {
  if (num_users < 1) throw std::invalid_argument("config: K must be >= 1");
  if (num_antennas < 1) throw std::invalid_argument("config: L must be >= 1");
  if (num_files < 1) throw std::invalid_argument("config: N must be >= 1");
  if (symbols_per_file < 1) throw std::invalid_argument("config: f must be >= 1");
  if (static_cast<int>(cache_files.size()) != num_users)
    throw std::invalid_argument("config: cache vector length must equal K");
  for (double m : cache_files) {
    if (m < 0.0 || m > static_cast<double>(num_files))
      throw std::invalid_argument("config: cache size must lie in [0, N]");
  }
  if (!(power_budget > 0.0))
    throw std::invalid_argument("config: power budget must be positive");
  if (!(noise_power > 0.0))
    throw std::invalid_argument("config: noise power must be positive");
}

bool SystemConfig::homogeneous_cache() const {
  return std::all_of(cache_files.begin(), cache_files.end(),
                     [&](double m) { return m == cache_files.front(); });
}

double SystemConfig::uniform_cache_files() const {
  if (!homogeneous_cache())
    throw std::invalid_argument("config: heterogeneous cache sizes");
  return cache_files.front();
}

int SystemConfig::centralized_t() const {
  const double m = uniform_cache_files();
  const double t = m * num_users / num_files;
  const double rounded = std::round(t);
  if (std::abs(t - rounded) > 1e-9) return -1;
  return static_cast<int>(rounded);
}

SystemConfig SystemConfig::homogeneous(int users, int antennas, int files,
                                       double cache, int symbols) {
  SystemConfig c;
  c.num_users = users;
  c.num_antennas = antennas;
  c.num_files = files;
  c.cache_files.assign(static_cast<std::size_t>(users), cache);
  c.symbols_per_file = symbols;
  return c;
}

void DemandVector::validate(const SystemConfig& config) const {
  if (size() != config.num_users)
    throw std::invalid_argument("demands: length must equal K");
  for (int file : d) {
    if (file < 0 || file >= config.num_files)
      throw std::invalid_argument("demands: file index out of range");
  }
}

CacheState::CacheState(int num_users, int num_files, int symbols_per_file)
    : num_users_(num_users),
      num_files_(num_files),
      symbols_per_file_(symbols_per_file),
      cached_(static_cast<std::size_t>(num_users) *
                  static_cast<std::size_t>(num_files),
              std::vector<bool>(static_cast<std::size_t>(symbols_per_file))),
      counts_(cached_.size(), 0) {
  if (num_users < 1 || num_files < 1 || symbols_per_file < 1)
    throw std::invalid_argument("CacheState: dimensions must be positive");
  if (num_users > 63)
    throw std::invalid_argument("CacheState: at most 63 users supported");
}

void CacheState::insert(int user, int file, int symbol) {
  if (symbol < 0 || symbol >= symbols_per_file_)
    throw std::invalid_argument("CacheState: symbol index out of range");
  auto ref = cached_[slot(user, file)][static_cast<std::size_t>(symbol)];
  if (!ref) {
    ref = true;
    ++counts_[slot(user, file)];
  }
}

bool CacheState::contains(int user, int file, int symbol) const {
  return cached_[slot(user, file)][static_cast<std::size_t>(symbol)];
}

int CacheState::count(int user, int file) const {
  return counts_[slot(user, file)];
}

int CacheState::total_count(int user) const {
  int total = 0;
  for (int n = 0; n < num_files_; ++n) total += count(user, n);
  return total;
}

std::vector<int> CacheState::symbols(int user, int file) const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count(user, file)));
  const auto& bits = cached_[slot(user, file)];
  for (int i = 0; i < symbols_per_file_; ++i) {
    if (bits[static_cast<std::size_t>(i)]) out.push_back(i);
  }
  return out;
}

std::uint64_t CacheState::cacher_mask(int file, int symbol) const {
  std::uint64_t mask = 0;
  for (int k = 0; k < num_users_; ++k) {
    if (contains(k, file, symbol)) mask |= 1ULL << k;
  }
  return mask;
}

std::vector<int> exclusive_subfile(const CacheState& cache, int file,
                                   const UserSubset& subset) {
  if (file < 0 || file >= cache.num_files())
    throw std::invalid_argument("exclusive_subfile: file out of range");
  if (!subset.empty() && subset.members().back() >= cache.num_users())
    throw std::invalid_argument("exclusive_subfile: user out of range");
  const std::uint64_t want = subset.mask();
  std::vector<int> out;
  for (int symbol = 0; symbol < cache.symbols_per_file(); ++symbol) {
    if (cache.cacher_mask(file, symbol) == want) out.push_back(symbol);
  }
  return out;
}

std::map<std::pair<int, UserSubset>, int> subfile_partition_sizes(
    const CacheState& cache, const DemandVector& demands) {
  std::map<std::pair<int, UserSubset>, int> sizes;
  for (int k = 0; k < cache.num_users(); ++k) {
    const int file = demands.demand(k);
    for (int symbol = 0; symbol < cache.symbols_per_file(); ++symbol) {
      const std::uint64_t mask = cache.cacher_mask(file, symbol);
      if (mask & (1ULL << k)) continue;  // cached at the demander itself
      ++sizes[{k, UserSubset::from_mask(mask)}];
    }
  }
  return sizes;
}

}  // namespace cachesim
