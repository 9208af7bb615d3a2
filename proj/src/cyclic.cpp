#include "cachesim/cyclic.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace cachesim {

namespace {

/// First simple cycle of length `order` whose lowest node is minimal, by DFS
/// with ascending successors. Returns the node list starting at the lowest.
std::optional<std::vector<int>> find_cycle(const ExchangeGraph& graph,
                                           int order) {
  const int K = graph.num_users;
  for (int start = 0; start < K; ++start) {
    std::vector<int> path = {start};
    std::vector<bool> on_path(static_cast<std::size_t>(K), false);
    on_path[static_cast<std::size_t>(start)] = true;

    // Iterative DFS over nodes > start so `start` is the canonical minimum.
    struct Frame {
      int node;
      int next_candidate;
    };
    std::vector<Frame> stack = {{start, start + 1}};
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (static_cast<int>(path.size()) == order) {
        if (graph.weight_at(top.node, start) > 0) return path;
        on_path[static_cast<std::size_t>(top.node)] = false;
        path.pop_back();
        stack.pop_back();
        continue;
      }
      bool advanced = false;
      for (int w = top.next_candidate; w < K; ++w) {
        if (on_path[static_cast<std::size_t>(w)]) continue;
        if (graph.weight_at(top.node, w) > 0) {
          top.next_candidate = w + 1;
          path.push_back(w);
          on_path[static_cast<std::size_t>(w)] = true;
          stack.push_back({w, start + 1});
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        on_path[static_cast<std::size_t>(top.node)] = false;
        path.pop_back();
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

}  // namespace

ExchangeGraph build_exchange_graph(const CacheState& cache,
                                   const DemandVector& demands, Rng& rng) {
  const int K = cache.num_users();
  ExchangeGraph g;
  g.num_users = K;
  g.edge_symbols.assign(
      static_cast<std::size_t>(K),
      std::vector<std::vector<SymbolRef>>(static_cast<std::size_t>(K)));
  g.weight.assign(static_cast<std::size_t>(K),
                  std::vector<int>(static_cast<std::size_t>(K), 0));
  g.nowhere_cached.assign(static_cast<std::size_t>(K), {});
  g.self_supplied.assign(static_cast<std::size_t>(K), 0);

  std::vector<int> owners;
  for (int j = 0; j < K; ++j) {
    const int file = demands.demand(j);
    for (int symbol = 0; symbol < cache.symbols_per_file(); ++symbol) {
      if (cache.contains(j, file, symbol)) {
        ++g.self_supplied[static_cast<std::size_t>(j)];
        continue;
      }
      owners.clear();
      for (int i = 0; i < K; ++i) {
        if (i != j && cache.contains(i, file, symbol)) owners.push_back(i);
      }
      if (owners.empty()) {
        g.nowhere_cached[static_cast<std::size_t>(j)].push_back({file, symbol});
        continue;
      }
      const int owner =
          owners[static_cast<std::size_t>(rng.uniform_int(
              static_cast<int>(owners.size())))];
      g.edge_symbols[static_cast<std::size_t>(owner)][static_cast<std::size_t>(j)]
          .push_back({file, symbol});
      ++g.weight[static_cast<std::size_t>(owner)][static_cast<std::size_t>(j)];
    }
  }
  return g;
}

std::vector<Loop> extract_loops(ExchangeGraph& graph, int min_order,
                                int max_order) {
  std::vector<Loop> out;
  for (int order = min_order; order <= max_order; ++order) {
    if (order < 2) continue;
    while (auto cycle = find_cycle(graph, order)) {
      Loop loop{*cycle};
      const int o = loop.order();
      for (int i = 0; i < o; ++i) {
        const int from = loop.nodes[static_cast<std::size_t>(i)];
        const int to = loop.nodes[static_cast<std::size_t>((i + 1) % o)];
        --graph.weight[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
      }
      out.push_back(std::move(loop));
    }
  }
  return out;
}

std::vector<CyclicCodeword> schedule_cycle(const Loop& loop,
                                           ExchangeGraph& graph,
                                           const DemandVector& demands) {
  (void)demands;
  const int o = loop.order();
  if (o < 2) return {};
  // Pop one symbol per traversed edge, in loop order. sym_for[x] is the symbol
  // demanded by node x on this loop (carried by the edge entering x).
  std::vector<SymbolRef> sym_for(static_cast<std::size_t>(graph.num_users));
  for (int i = 0; i < o; ++i) {
    const int from = loop.nodes[static_cast<std::size_t>(i)];
    const int to = loop.nodes[static_cast<std::size_t>((i + 1) % o)];
    auto& pool =
        graph.edge_symbols[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
    if (pool.empty())
      throw std::runtime_error("schedule_cycle: loop not backed by symbols");
    sym_for[static_cast<std::size_t>(to)] = pool.front();
    pool.erase(pool.begin());
  }

  // Anchor at the lowest node (= nodes[0] by construction of find_cycle) and
  // walk the loop; each hop pairs the anchor with the current node.
  const int anchor = loop.nodes[0];
  std::vector<CyclicCodeword> out;
  out.reserve(static_cast<std::size_t>(o - 1));
  for (int i = 1; i < o; ++i) {
    const int partner = loop.nodes[static_cast<std::size_t>(i)];
    const int chain = loop.nodes[static_cast<std::size_t>((i + 1) % o)];
    CyclicCodeword cw;
    cw.anchor = anchor;
    cw.partner = partner;
    cw.partner_demander = partner;
    cw.partner_symbol = sym_for[static_cast<std::size_t>(partner)];
    cw.chain_demander = chain;
    cw.chain_symbol = sym_for[static_cast<std::size_t>(chain)];
    out.push_back(cw);
  }
  return out;
}

DecodeReplay simulate_decode(const std::vector<CyclicCodeword>& schedule,
                             const CacheState& cache,
                             const DemandVector& demands) {
  const int K = cache.num_users();
  DecodeReplay replay;
  replay.recovered.assign(static_cast<std::size_t>(K), {});
  std::vector<std::set<SymbolRef>> buffer(static_cast<std::size_t>(K));
  std::vector<std::set<SymbolRef>> recovered(static_cast<std::size_t>(K));

  auto knows = [&](int user, const SymbolRef& s) {
    return buffer[static_cast<std::size_t>(user)].count(s) > 0 ||
           cache.contains(user, s.file, s.index) ||
           recovered[static_cast<std::size_t>(user)].count(s) > 0;
  };

  for (const CyclicCodeword& cw : schedule) {
    for (int user : {cw.anchor, cw.partner}) {
      const SymbolRef a = cw.partner_symbol;
      const SymbolRef b = cw.chain_symbol;
      SymbolRef gained{};
      if (knows(user, a) && knows(user, b)) {
        continue;  // nothing new; payload fully known
      } else if (knows(user, a)) {
        gained = b;
      } else if (knows(user, b)) {
        gained = a;
      } else {
        throw std::runtime_error("simulate_decode: undecodable codeword");
      }
      // The used side information, if buffered, is spent now.
      const SymbolRef used = gained == a ? b : a;
      buffer[static_cast<std::size_t>(user)].erase(used);
      if (gained.file == demands.demand(user)) {
        recovered[static_cast<std::size_t>(user)].insert(gained);
      } else {
        buffer[static_cast<std::size_t>(user)].insert(gained);
      }
      replay.max_buffer_occupancy = std::max(
          replay.max_buffer_occupancy,
          static_cast<int>(buffer[static_cast<std::size_t>(user)].size()));
    }
  }
  for (int k = 0; k < K; ++k) {
    replay.recovered[static_cast<std::size_t>(k)].assign(
        recovered[static_cast<std::size_t>(k)].begin(),
        recovered[static_cast<std::size_t>(k)].end());
  }
  return replay;
}

CyclicPlan plan_cyclic_delivery(const CacheState& cache,
                                const DemandVector& demands, CyclicMode mode,
                                Rng& graph_rng) {
  const int K = cache.num_users();
  CyclicPlan plan;
  plan.mode = mode;
  plan.stats.loops_by_order.assign(static_cast<std::size_t>(K) + 1, 0);

  if (mode == CyclicMode::AllUser) {
    plan.all_user_codewords = build_codewords_decentralized(cache, demands);
    return plan;
  }

  ExchangeGraph graph = build_exchange_graph(cache, demands, graph_rng);
  if (mode != CyclicMode::Uncoded) {
    const int max_order = mode == CyclicMode::TwoUserOnly ? 2 : K;
    const auto loops = extract_loops(graph, 2, max_order);
    plan.stats.loops_processed = static_cast<int>(loops.size());
    for (const Loop& loop : loops) {
      ++plan.stats.loops_by_order[static_cast<std::size_t>(loop.order())];
      const auto cws = schedule_cycle(loop, graph, demands);
      plan.schedule.insert(plan.schedule.end(), cws.begin(), cws.end());
    }
  }
  plan.stats.coded_transmissions = static_cast<int>(plan.schedule.size());

  // Everything not delivered through a loop leaves the BS uncoded.
  plan.uncoded_per_user.assign(static_cast<std::size_t>(K), 0);
  for (int j = 0; j < K; ++j) {
    int leftover =
        static_cast<int>(graph.nowhere_cached[static_cast<std::size_t>(j)].size());
    for (int i = 0; i < K; ++i) {
      leftover += static_cast<int>(
          graph.edge_symbols[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
              .size());
    }
    plan.uncoded_per_user[static_cast<std::size_t>(j)] = leftover;
    plan.stats.uncoded_transmissions += leftover;
  }
  return plan;
}

SymmetricRate evaluate_cyclic_plan(const CyclicPlan& plan, int symbols_per_file,
                                   double power, LogBase base,
                                   BeamformerCache& beams) {
  if (plan.mode == CyclicMode::AllUser) {
    return symrate_maxmin(plan.all_user_codewords, power, base, beams);
  }
  const double f = symbols_per_file;
  SymmetricRate out;
  double total_time = 0.0;
  bool any = false;
  for (const CyclicCodeword& cw : plan.schedule) {
    const double r = multicast_rate(cw.target(), power, base, beams);
    if (r <= 0.0) {
      out.zero_rate = true;
      return out;
    }
    total_time += 1.0 / f / r;
    any = true;
  }
  for (std::size_t j = 0; j < plan.uncoded_per_user.size(); ++j) {
    const int leftover = plan.uncoded_per_user[j];
    if (leftover == 0) continue;
    const double r = multicast_rate(UserSubset::single(static_cast<int>(j)),
                                    power, base, beams);
    if (r <= 0.0) {
      out.zero_rate = true;
      return out;
    }
    total_time += static_cast<double>(leftover) / f / r;
    any = true;
  }
  if (!any) {
    out.all_cached = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  out.value = 1.0 / total_time;
  return out;
}

SymmetricRate run_cyclic_delivery(const CacheState& cache,
                                  const DemandVector& demands, double power,
                                  CyclicMode mode, LogBase base, Rng& graph_rng,
                                  BeamformerCache& beams,
                                  CyclicRunStats* stats) {
  const CyclicPlan plan = plan_cyclic_delivery(cache, demands, mode, graph_rng);
  if (stats) *stats = plan.stats;
  return evaluate_cyclic_plan(plan, cache.symbols_per_file(), power, base,
                              beams);
}

}  // namespace cachesim
