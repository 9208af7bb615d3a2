#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cachesim/rng.hpp"
#include "cachesim/types.hpp"

namespace cachesim {

enum class Scheme { Maxmin, Complex, Finite, Cyclic, TwoUserOnly, Uncoded, AllUser };
enum class PlacementKind { Centralized, Decentralized };

std::string to_string(Scheme scheme);
std::string to_string(PlacementKind placement);
Scheme scheme_from_string(const std::string& name);
PlacementKind placement_from_string(const std::string& name);

/// Large-scale geometry: fixed unit gains, or users dropped on a disk with the
/// path-loss law applied to their distances.
struct GeometrySpec {
  enum class Kind { UnitGains, PppDisk };
  Kind kind = Kind::UnitGains;
  double radius = 1.0;
  double k0 = 1.0;
  double d0 = 1.0;
  double exponent = 3.0;
};

/// Everything one Monte Carlo experiment needs. A configuration error anywhere
/// here surfaces as std::invalid_argument.
struct ScenarioConfig {
  std::string name;
  SystemConfig system;
  GeometrySpec geometry;
  std::vector<double> snr_db = {0, 5, 10, 15, 20, 25, 30};
  int trials = 100;
  std::vector<Scheme> schemes;
  std::vector<PlacementKind> placements = {PlacementKind::Decentralized};
  LogBase log_base = LogBase::Two;
  bool distinct_demands = false;
  MassModel masses = MassModel::Empirical;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Built-in scenarios: example_a, fig3_homo, fig3_hetero.
ScenarioConfig builtin_scenario(const std::string& name);
/// Scenario from a JSON file (schema documented in the README).
ScenarioConfig load_scenario(const std::string& path);
bool is_builtin_scenario(const std::string& name);

struct RateReport {
  std::string scenario;
  Scheme scheme;
  PlacementKind placement;
  double snr_db = 0.0;
  int trials = 0;
  double mean = 0.0;
  double stderr_mean = 0.0;
  int flags = 0;  // trials that hit a zero-rate or all-cached guard
};

/// Full per-trial rate tensor, for paired comparisons across schemes/SNRs.
struct ScenarioRun {
  ScenarioConfig config;
  std::vector<RateReport> reports;
  // values[placement][scheme][snr][trial]; indices follow config order.
  std::vector<std::vector<std::vector<std::vector<double>>>> values;
};

ScenarioRun run_scenario_detailed(const ScenarioConfig& config);
std::vector<RateReport> run_scenario(const ScenarioConfig& config);

/// Writes `scenario,scheme,placement,snr_db,trials,r_sym_mean,r_sym_stderr,flags`
/// rows, UTF-8, LF endings, 6 significant digits.
void emit_csv(const std::vector<RateReport>& reports, const std::string& path);

struct Table1Options {
  int users = 50;
  double radius = 1.0;
  double k0 = 1.0;
  double d0 = 1.0;
  double exponent = 3.0;
  /// Transmit power behind the tabulated values; the source table was produced
  /// at -10 dB even though its caption drops the factor.
  double power = 0.1;
};

struct Table1Estimate {
  int subset_size = 0;
  double random_subset_base2 = 0.0;
  double random_subset_nat = 0.0;
  double all_subsets_base2 = 0.0;
  double all_subsets_nat = 0.0;
};

/// Broadcast-rate table: per trial drop `users` points on the disk, fade them,
/// and record min_{i in S} log(1 + P g_i |h_i|^2) for a random subset S of each
/// size, plus the exact mean over all subsets via order statistics.
std::vector<Table1Estimate> table1_estimate(int trials,
                                            std::span<const int> subset_sizes,
                                            Rng& rng,
                                            const Table1Options& options = {});

}  // namespace cachesim
