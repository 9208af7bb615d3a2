#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cachesim/combinatorics.hpp"

namespace cachesim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class LogBase { Two, Natural };

/// Analytic masses use the high-probability subfile fractions; empirical
/// masses account the exact symbol counts of a concrete placement.
enum class MassModel { Empirical, Analytic };

struct SymmetricRate {
  double value = 0.0;
  bool all_cached = false;  // nothing to send; value is +inf
  bool zero_rate = false;   // some needed subset had rate 0; value is 0
};

/// log(1 + snr) in the configured base; the paper never fixes the base, so it
/// stays a runtime switch.
inline double rate_of(double snr, LogBase base) {
  const double nats = std::log1p(snr);
  return base == LogBase::Two ? nats * 1.4426950408889634074 : nats;
}

/// System-wide dimensions and budgets.
struct SystemConfig {
  int num_users = 1;        // K
  int num_antennas = 1;     // L
  int num_files = 1;        // N
  std::vector<double> cache_files;  // M, per user, in units of files
  int symbols_per_file = 1;  // f
  double power_budget = 1.0;  // P_max, linear
  double noise_power = 1.0;

  /// Throws std::invalid_argument when any invariant is violated.
  void validate() const;

  bool homogeneous_cache() const;
  /// Cache size shared by all users; throws when caches are heterogeneous.
  double uniform_cache_files() const;
  /// Homogeneous helper: t = M*K/N, or -1 when not an integer.
  int centralized_t() const;

  static SystemConfig homogeneous(int users, int antennas, int files,
                                  double cache, int symbols);
};

struct DemandVector {
  std::vector<int> d;

  int demand(int user) const { return d[static_cast<std::size_t>(user)]; }
  int size() const { return static_cast<int>(d.size()); }
  void validate(const SystemConfig& config) const;
};

/// Placement outcome: per user and file, the set of cached symbol indices.
/// Immutable in spirit once placement has filled it; delivery code only reads.
class CacheState {
 public:
  CacheState(int num_users, int num_files, int symbols_per_file);

  int num_users() const { return num_users_; }
  int num_files() const { return num_files_; }
  int symbols_per_file() const { return symbols_per_file_; }

  void insert(int user, int file, int symbol);
  bool contains(int user, int file, int symbol) const;
  /// Number of cached symbols of `file` at `user`.
  int count(int user, int file) const;
  /// Total cached symbols at `user` across files.
  int total_count(int user) const;
  std::vector<int> symbols(int user, int file) const;

  /// Bit k set iff user k caches (file, symbol).
  std::uint64_t cacher_mask(int file, int symbol) const;

 private:
  std::size_t slot(int user, int file) const {
    return static_cast<std::size_t>(user) * static_cast<std::size_t>(num_files_) +
           static_cast<std::size_t>(file);
  }

  int num_users_;
  int num_files_;
  int symbols_per_file_;
  std::vector<std::vector<bool>> cached_;
  std::vector<int> counts_;
};

/// Symbols of `file` present in every cache of S and absent everywhere else.
/// S = {} selects the symbols cached nowhere.
std::vector<int> exclusive_subfile(const CacheState& cache, int file,
                                   const UserSubset& subset);

/// |V_{d_k, T}| for every user k and every T not containing k with nonzero
/// mass. For fixed k the sizes plus the symbols cached at k sum to f.
std::map<std::pair<int, UserSubset>, int> subfile_partition_sizes(
    const CacheState& cache, const DemandVector& demands);

}  // namespace cachesim
