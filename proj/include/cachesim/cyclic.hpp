#pragma once

#include <compare>
#include <vector>

#include "cachesim/beamforming.hpp"
#include "cachesim/delivery_maxmin.hpp"
#include "cachesim/rng.hpp"
#include "cachesim/types.hpp"

namespace cachesim {

struct SymbolRef {
  int file;
  int index;
  friend bool operator==(const SymbolRef&, const SymbolRef&) = default;
  friend auto operator<=>(const SymbolRef&, const SymbolRef&) = default;
};

/// Weighted directed demand graph. edge_symbols[i][j] lists the symbols stored
/// at user i, absent at user j, demanded by user j and assigned to supplier i;
/// weights mirror the list sizes and are what loop extraction decrements.
struct ExchangeGraph {
  int num_users = 0;
  std::vector<std::vector<std::vector<SymbolRef>>> edge_symbols;
  std::vector<std::vector<int>> weight;
  std::vector<std::vector<SymbolRef>> nowhere_cached;  // per demander
  std::vector<int> self_supplied;                      // counts per demander

  int weight_at(int from, int to) const {
    return weight[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
  }
};

/// Builds the demand graph. Symbols cached at several potential suppliers are
/// assigned to one of them uniformly at random; symbols cached at the demander
/// itself are self-contained and generate no edge.
ExchangeGraph build_exchange_graph(const CacheState& cache,
                                   const DemandVector& demands, Rng& rng);

struct Loop {
  std::vector<int> nodes;  // consecutive edges node[i] -> node[i+1], wrap at end
  int order() const { return static_cast<int>(nodes.size()); }
};

/// Extracts loops in ascending order o in [min_order, max_order]: repeatedly
/// find the first simple cycle of length o (DFS from the lowest-indexed node,
/// lowest successor first), record it and decrement its edge weights, until no
/// cycle of that length remains. Deterministic.
std::vector<Loop> extract_loops(ExchangeGraph& graph, int min_order,
                                int max_order);

/// One two-user multicast of a processed loop. The partner decodes its own
/// symbol against its cache; the anchor chains through its one-symbol buffer.
struct CyclicCodeword {
  int anchor;
  int partner;
  int partner_demander;      // == partner
  SymbolRef partner_symbol;  // demanded by the partner
  int chain_demander;        // next node on the walk (the anchor, at the end)
  SymbolRef chain_symbol;    // demanded by the chain node

  UserSubset target() const { return UserSubset{anchor, partner}; }
};

/// Produces the order-1 fewer two-user codewords of one loop, consuming one
/// symbol from every traversed edge of the graph. The anchor is the loop's
/// lowest-indexed node.
std::vector<CyclicCodeword> schedule_cycle(const Loop& loop,
                                           ExchangeGraph& graph,
                                           const DemandVector& demands);

struct DecodeReplay {
  std::vector<std::vector<SymbolRef>> recovered;  // per user, demand symbols
  int max_buffer_occupancy = 0;
};

/// Replays a schedule symbol by symbol. Every recipient decodes with its cache
/// plus at most one buffered symbol; throws on any undecodable codeword.
DecodeReplay simulate_decode(const std::vector<CyclicCodeword>& schedule,
                             const CacheState& cache,
                             const DemandVector& demands);

enum class CyclicMode { Cyclic, TwoUserOnly, Uncoded, AllUser };

struct CyclicRunStats {
  int loops_processed = 0;
  std::vector<int> loops_by_order;  // index = order
  int coded_transmissions = 0;
  int uncoded_transmissions = 0;
};

/// Channel-independent part of a delivery: the coded schedule plus the
/// uncoded leftovers per user. Reusable across an SNR sweep.
struct CyclicPlan {
  CyclicMode mode = CyclicMode::Uncoded;
  std::vector<CyclicCodeword> schedule;
  std::vector<int> uncoded_per_user;
  std::vector<Codeword> all_user_codewords;  // AllUser mode only
  CyclicRunStats stats;
};

CyclicPlan plan_cyclic_delivery(const CacheState& cache,
                                const DemandVector& demands, CyclicMode mode,
                                Rng& graph_rng);

SymmetricRate evaluate_cyclic_plan(const CyclicPlan& plan, int symbols_per_file,
                                   double power, LogBase base,
                                   BeamformerCache& beams);

/// End-to-end delivery for one channel draw. Coded exchanges ride two-user
/// multicasts at the max-min pair rate; leftovers and nowhere-cached symbols
/// go uncoded at the unicast rate. AllUser delegates to the all-subset
/// max-min multicast scheme.
SymmetricRate run_cyclic_delivery(const CacheState& cache,
                                  const DemandVector& demands, double power,
                                  CyclicMode mode, LogBase base, Rng& graph_rng,
                                  BeamformerCache& beams,
                                  CyclicRunStats* stats = nullptr);

}  // namespace cachesim
