#include "cachesim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "cachesim/channel.hpp"
#include "cachesim/cyclic.hpp"
#include "cachesim/delivery_complex.hpp"
#include "cachesim/delivery_finite.hpp"
#include "cachesim/delivery_maxmin.hpp"
#include "cachesim/geometry.hpp"
#include "cachesim/placement.hpp"

namespace cachesim {

namespace {

constexpr std::uint64_t kGeometryStream = 1;
constexpr std::uint64_t kChannelStream = 2;
constexpr std::uint64_t kDemandStream = 3;
constexpr std::uint64_t kPlacementStream = 4;
constexpr std::uint64_t kGraphStream = 5;

double power_from_snr_db(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

}  // namespace

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Maxmin: return "maxmin";
    case Scheme::Complex: return "complex";
    case Scheme::Finite: return "finite";
    case Scheme::Cyclic: return "cyclic";
    case Scheme::TwoUserOnly: return "two_user_only";
    case Scheme::Uncoded: return "uncoded";
    case Scheme::AllUser: return "all_user";
  }
  throw std::invalid_argument("unknown scheme");
}

std::string to_string(PlacementKind placement) {
  return placement == PlacementKind::Centralized ? "centralized"
                                                 : "decentralized";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "maxmin") return Scheme::Maxmin;
  if (name == "complex") return Scheme::Complex;
  if (name == "finite") return Scheme::Finite;
  if (name == "cyclic") return Scheme::Cyclic;
  if (name == "two_user_only") return Scheme::TwoUserOnly;
  if (name == "uncoded") return Scheme::Uncoded;
  if (name == "all_user") return Scheme::AllUser;
  throw std::invalid_argument("unknown scheme: " + name);
}

PlacementKind placement_from_string(const std::string& name) {
  if (name == "centralized") return PlacementKind::Centralized;
  if (name == "decentralized") return PlacementKind::Decentralized;
  throw std::invalid_argument("unknown placement: " + name);
}

void ScenarioConfig::validate() const {
  system.validate();
  if (trials < 1) throw std::invalid_argument("scenario: trials must be >= 1");
  if (snr_db.empty()) throw std::invalid_argument("scenario: empty SNR grid");
  if (schemes.empty()) throw std::invalid_argument("scenario: no schemes");
  if (placements.empty()) throw std::invalid_argument("scenario: no placements");
  if (distinct_demands && system.num_users > system.num_files)
    throw std::invalid_argument(
        "scenario: distinct demands require K <= N");
  const bool centralized =
      std::find(placements.begin(), placements.end(),
                PlacementKind::Centralized) != placements.end();
  if (centralized) {
    const int t = system.centralized_t();  // throws when heterogeneous
    if (t < 0)
      throw std::invalid_argument(
          "scenario: centralized placement needs integer t = M*K/N");
    if (system.symbols_per_file %
            static_cast<int>(binomial(system.num_users, t)) != 0)
      throw std::invalid_argument(
          "scenario: centralized placement needs C(K,t) | f");
  }
  if (masses == MassModel::Analytic && !system.homogeneous_cache())
    throw std::invalid_argument(
        "scenario: analytic masses need a homogeneous cache size");
}

bool is_builtin_scenario(const std::string& name) {
  return name == "example_a" || name == "fig3_homo" || name == "fig3_hetero";
}

ScenarioConfig builtin_scenario(const std::string& name) {
  ScenarioConfig c;
  c.name = name;
  if (name == "example_a") {
    c.system = SystemConfig::homogeneous(3, 2, 3, 1.0, 3000);
    c.geometry.kind = GeometrySpec::Kind::UnitGains;
    c.schemes = {Scheme::Maxmin, Scheme::Complex, Scheme::Finite};
    c.placements = {PlacementKind::Centralized, PlacementKind::Decentralized};
    c.distinct_demands = true;
    c.trials = 1000;
  } else if (name == "fig3_homo" || name == "fig3_hetero") {
    c.system = SystemConfig::homogeneous(5, 2, 5, 1.5, 1000);
    if (name == "fig3_hetero") c.system.cache_files = {0.5, 1.0, 1.5, 2.0, 2.5};
    c.geometry.kind = GeometrySpec::Kind::PppDisk;
    c.schemes = {Scheme::Cyclic, Scheme::TwoUserOnly, Scheme::AllUser,
                 Scheme::Uncoded};
    c.placements = {PlacementKind::Decentralized};
    c.trials = 1000;
  } else {
    throw std::invalid_argument("unknown builtin scenario: " + name);
  }
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scenario JSON parse error: ") +
                                e.what());
  }
  try {
    ScenarioConfig c;
    c.name = j.value("name", std::string("custom"));
    c.system.num_users = j.at("users").get<int>();
    c.system.num_antennas = j.at("antennas").get<int>();
    c.system.num_files = j.at("files").get<int>();
    if (j.at("cache_files").is_array()) {
      c.system.cache_files = j.at("cache_files").get<std::vector<double>>();
    } else {
      c.system.cache_files.assign(static_cast<std::size_t>(c.system.num_users),
                                  j.at("cache_files").get<double>());
    }
    c.system.symbols_per_file = j.at("symbols_per_file").get<int>();
    c.system.noise_power = j.value("noise_power", 1.0);
    if (j.contains("geometry")) {
      const auto& g = j.at("geometry");
      const std::string kind = g.value("kind", std::string("unit_gains"));
      if (kind == "unit_gains") {
        c.geometry.kind = GeometrySpec::Kind::UnitGains;
      } else if (kind == "ppp_disk") {
        c.geometry.kind = GeometrySpec::Kind::PppDisk;
        c.geometry.radius = g.value("radius", 1.0);
        c.geometry.k0 = g.value("k0", 1.0);
        c.geometry.d0 = g.value("d0", 1.0);
        c.geometry.exponent = g.value("exponent", 3.0);
      } else {
        throw std::invalid_argument("unknown geometry kind: " + kind);
      }
    }
    if (j.contains("snr_db"))
      c.snr_db = j.at("snr_db").get<std::vector<double>>();
    c.trials = j.value("trials", 100);
    for (const auto& s : j.at("schemes"))
      c.schemes.push_back(scheme_from_string(s.get<std::string>()));
    if (j.contains("placements")) {
      c.placements.clear();
      for (const auto& p : j.at("placements"))
        c.placements.push_back(placement_from_string(p.get<std::string>()));
    }
    const std::string base = j.value("log_base", std::string("2"));
    if (base == "2") {
      c.log_base = LogBase::Two;
    } else if (base == "e") {
      c.log_base = LogBase::Natural;
    } else {
      throw std::invalid_argument("log_base must be \"2\" or \"e\"");
    }
    c.distinct_demands = j.value("distinct_demands", false);
    const std::string masses = j.value("masses", std::string("empirical"));
    if (masses == "empirical") {
      c.masses = MassModel::Empirical;
    } else if (masses == "analytic") {
      c.masses = MassModel::Analytic;
    } else {
      throw std::invalid_argument("masses must be \"empirical\" or \"analytic\"");
    }
    c.seed = j.value("seed", std::uint64_t{1});
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scenario JSON field error: ") +
                                e.what());
  }
}

ScenarioRun run_scenario_detailed(const ScenarioConfig& config) {
  config.validate();
  const int K = config.system.num_users;
  const int num_placements = static_cast<int>(config.placements.size());
  const int num_schemes = static_cast<int>(config.schemes.size());
  const int num_snrs = static_cast<int>(config.snr_db.size());

  ScenarioRun run;
  run.config = config;
  run.values.assign(
      static_cast<std::size_t>(num_placements),
      std::vector<std::vector<std::vector<double>>>(
          static_cast<std::size_t>(num_schemes),
          std::vector<std::vector<double>>(
              static_cast<std::size_t>(num_snrs),
              std::vector<double>(static_cast<std::size_t>(config.trials),
                                  0.0))));
  std::vector<std::vector<std::vector<int>>> flags(
      static_cast<std::size_t>(num_placements),
      std::vector<std::vector<int>>(
          static_cast<std::size_t>(num_schemes),
          std::vector<int>(static_cast<std::size_t>(num_snrs), 0)));

  for (int trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t t = static_cast<std::uint64_t>(trial);
    Eigen::VectorXd gains = Eigen::VectorXd::Ones(K);
    if (config.geometry.kind == GeometrySpec::Kind::PppDisk) {
      Rng geom_rng(derive_seed(config.seed, {kGeometryStream, t}));
      const Geometry geom =
          sample_disk_fixed(K, config.geometry.radius, geom_rng);
      gains = path_loss_gains(geom, config.geometry.k0, config.geometry.d0,
                              config.geometry.exponent);
    }
    Rng chan_rng(derive_seed(config.seed, {kChannelStream, t}));
    const ChannelRealization channel =
        sample_rayleigh(config.system, gains, chan_rng);
    BeamformerCache beams(channel.H);

    Rng demand_rng(derive_seed(config.seed, {kDemandStream, t}));
    DemandVector demands;
    if (config.distinct_demands) {
      const auto perm = demand_rng.permutation(config.system.num_files);
      demands.d.assign(perm.begin(), perm.begin() + K);
    } else {
      demands.d.resize(static_cast<std::size_t>(K));
      for (int k = 0; k < K; ++k)
        demands.d[static_cast<std::size_t>(k)] =
            demand_rng.uniform_int(config.system.num_files);
    }

    for (int pi = 0; pi < num_placements; ++pi) {
      const PlacementKind placement =
          config.placements[static_cast<std::size_t>(pi)];
      CacheState cache = [&] {
        if (placement == PlacementKind::Centralized)
          return place_centralized(config.system);
        Rng place_rng(derive_seed(config.seed, {kPlacementStream, t}));
        return place_decentralized(config.system, place_rng);
      }();

      // Channel-independent artifacts shared across the SNR sweep.
      std::vector<Codeword> maxmin_codewords;
      std::map<Scheme, CyclicPlan> plans;
      for (int si = 0; si < num_schemes; ++si) {
        const Scheme scheme = config.schemes[static_cast<std::size_t>(si)];
        if (scheme == Scheme::Maxmin && maxmin_codewords.empty()) {
          maxmin_codewords =
              placement == PlacementKind::Centralized
                  ? build_codewords_centralized(cache, config.system, demands)
                  : build_codewords_decentralized(cache, demands);
        }
        if (scheme == Scheme::Cyclic || scheme == Scheme::TwoUserOnly ||
            scheme == Scheme::Uncoded || scheme == Scheme::AllUser) {
          const CyclicMode mode =
              scheme == Scheme::Cyclic        ? CyclicMode::Cyclic
              : scheme == Scheme::TwoUserOnly ? CyclicMode::TwoUserOnly
              : scheme == Scheme::Uncoded     ? CyclicMode::Uncoded
                                              : CyclicMode::AllUser;
          Rng graph_rng(derive_seed(
              config.seed, {kGraphStream, t, static_cast<std::uint64_t>(pi)}));
          plans.emplace(scheme,
                        plan_cyclic_delivery(cache, demands, mode, graph_rng));
        }
      }

      for (int si = 0; si < num_schemes; ++si) {
        const Scheme scheme = config.schemes[static_cast<std::size_t>(si)];
        for (int ni = 0; ni < num_snrs; ++ni) {
          const double power =
              power_from_snr_db(config.snr_db[static_cast<std::size_t>(ni)]);
          SymmetricRate r;
          switch (scheme) {
            case Scheme::Maxmin:
              r = symrate_maxmin(maxmin_codewords, power, config.log_base,
                                 beams);
              break;
            case Scheme::Complex:
            case Scheme::Finite: {
              SymrateOptions opt;
              opt.power = power;
              opt.base = config.log_base;
              opt.masses = config.masses;
              r = scheme == Scheme::Complex
                      ? symrate_complex(cache, demands, config.system, opt,
                                        beams)
                      : symrate_finite(cache, demands, config.system, opt,
                                       beams);
              break;
            }
            default:
              r = evaluate_cyclic_plan(plans.at(scheme),
                                       config.system.symbols_per_file, power,
                                       config.log_base, beams);
              break;
          }
          double value = r.value;
          if (r.all_cached || r.zero_rate) {
            ++flags[static_cast<std::size_t>(pi)][static_cast<std::size_t>(si)]
                   [static_cast<std::size_t>(ni)];
            if (r.all_cached) value = 0.0;  // excluded from the mean below
          }
          run.values[static_cast<std::size_t>(pi)][static_cast<std::size_t>(si)]
                    [static_cast<std::size_t>(ni)]
                    [static_cast<std::size_t>(trial)] = value;
        }
      }
    }
  }

  for (int pi = 0; pi < num_placements; ++pi) {
    for (int si = 0; si < num_schemes; ++si) {
      for (int ni = 0; ni < num_snrs; ++ni) {
        const auto& vals =
            run.values[static_cast<std::size_t>(pi)][static_cast<std::size_t>(si)]
                      [static_cast<std::size_t>(ni)];
        double sum = 0.0;
        for (double v : vals) sum += v;
        const double mean = sum / config.trials;
        double ss = 0.0;
        for (double v : vals) ss += (v - mean) * (v - mean);
        const double stderr_mean =
            config.trials > 1
                ? std::sqrt(ss / (config.trials - 1)) /
                      std::sqrt(static_cast<double>(config.trials))
                : 0.0;
        RateReport report;
        report.scenario = config.name;
        report.scheme = config.schemes[static_cast<std::size_t>(si)];
        report.placement = config.placements[static_cast<std::size_t>(pi)];
        report.snr_db = config.snr_db[static_cast<std::size_t>(ni)];
        report.trials = config.trials;
        report.mean = mean;
        report.stderr_mean = stderr_mean;
        report.flags = flags[static_cast<std::size_t>(pi)]
                            [static_cast<std::size_t>(si)]
                            [static_cast<std::size_t>(ni)];
        run.reports.push_back(std::move(report));
      }
    }
  }
  return run;
}

std::vector<RateReport> run_scenario(const ScenarioConfig& config) {
  return run_scenario_detailed(config).reports;
}

void emit_csv(const std::vector<RateReport>& reports, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << "scenario,scheme,placement,snr_db,trials,r_sym_mean,r_sym_stderr,flags\n";
  char buf[64];
  for (const RateReport& r : reports) {
    out << r.scenario << ',' << to_string(r.scheme) << ','
        << to_string(r.placement) << ',';
    std::snprintf(buf, sizeof(buf), "%.6g", r.snr_db);
    out << buf << ',' << r.trials << ',';
    std::snprintf(buf, sizeof(buf), "%.6g", r.mean);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.6g", r.stderr_mean);
    out << buf << ',' << r.flags << '\n';
  }
}

std::vector<Table1Estimate> table1_estimate(int trials,
                                            std::span<const int> subset_sizes,
                                            Rng& rng,
                                            const Table1Options& options) {
  if (trials < 1) throw std::invalid_argument("table1: trials must be >= 1");
  for (int s : subset_sizes) {
    if (s < 1 || s > options.users)
      throw std::invalid_argument("table1: subset size out of range");
  }
  const int K = options.users;
  std::vector<Table1Estimate> out(subset_sizes.size());
  for (std::size_t i = 0; i < subset_sizes.size(); ++i)
    out[i].subset_size = subset_sizes[i];

  std::vector<double> rate_nats(static_cast<std::size_t>(K));
  for (int trial = 0; trial < trials; ++trial) {
    for (int k = 0; k < K; ++k) {
      const double d = options.radius * std::sqrt(rng.uniform());
      const double g =
          path_loss_gain(d, options.k0, options.d0, options.exponent);
      const Complex h = rng.cgaussian();
      rate_nats[static_cast<std::size_t>(k)] =
          std::log1p(options.power * g * std::norm(h));
    }
    std::vector<double> sorted = rate_nats;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < subset_sizes.size(); ++i) {
      const int s = subset_sizes[i];
      const auto members = rng.sample_without_replacement(K, s);
      double worst = std::numeric_limits<double>::infinity();
      for (int m : members)
        worst = std::min(worst, rate_nats[static_cast<std::size_t>(m)]);
      out[i].random_subset_nat += worst;
      // Mean over all C(K,s) subsets: the j-th smallest rate is the minimum
      // of C(K-1-j, s-1) subsets.
      const double total = static_cast<double>(binomial(K, s));
      double acc = 0.0;
      for (int j = 0; j + s <= K; ++j) {
        acc += static_cast<double>(binomial(K - 1 - j, s - 1)) *
               sorted[static_cast<std::size_t>(j)];
      }
      out[i].all_subsets_nat += acc / total;
    }
  }
  constexpr double kInvLn2 = 1.4426950408889634074;
  for (auto& e : out) {
    e.random_subset_nat /= trials;
    e.all_subsets_nat /= trials;
    e.random_subset_base2 = e.random_subset_nat * kInvLn2;
    e.all_subsets_base2 = e.all_subsets_nat * kInvLn2;
  }
  return out;
}

}  // namespace cachesim
