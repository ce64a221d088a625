#pragma once

// Greedy augmenting-path heuristic.
//
// Keeps one minimum-hop <=L path per commodity that still has demand, always
// routes along the path with the most hops, deletes saturated edges and then
// recomputes the paths the deletion affected. With integral capacities and
// demands every routed amount is integral.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "lbmcf/parallel.hpp"
#include "lbmcf/shortest_paths.hpp"
#include "lbmcf/types.hpp"

namespace lbmcf {

struct GreedyState {
  std::vector<double> residual_capacity;  // per edge
  std::vector<double> residual_demand;    // per commodity, kUnbounded allowed
  std::vector<char> live;                 // per edge; deleted edges never come back

  static GreedyState initial(const Instance& instance) {
    GreedyState s;
    for (const Edge& e : instance.network.edges()) s.residual_capacity.push_back(e.capacity);
    for (const Commodity& c : instance.commodities) s.residual_demand.push_back(c.demand);
    s.live.assign(instance.network.edges().size(), 1);
    return s;
  }
};

struct GreedyPath {
  std::int32_t commodity = 0;
  std::vector<EdgeId> edges;
};

struct GreedyOptions {
  int threads = 1;  // workers for the per-origin searches of a rebuild
};

struct GreedyStats {
  std::int64_t iterations = 0;
  std::int64_t rebuilds = 0;         // path-set constructions, the initial one included
  std::int64_t searches = 0;         // BFS runs actually performed
  std::int64_t deleted_edges = 0;
};

struct GreedyResult {
  FlowSolution solution;
  GreedyStats stats;
};

namespace detail {

// Per-origin BFS trees over the live edges. A tree stays exact after an edge
// deletion unless the deleted edge is the parent edge of a settled vertex:
// other edges never decide a parent, so the search would replay identically.
class OriginTreeCache {
 public:
  explicit OriginTreeCache(const Instance& instance) : instance_(&instance) {}

  void invalidate_edge(EdgeId e) {
    const auto head = static_cast<std::size_t>(instance_->network.edge(e).head);
    for (auto& [origin, entry] : entries_)
      if (entry.valid && entry.tree.parent_edge[head] == e) entry.valid = false;
  }

  // Recomputes the stale trees of origins that still have a commodity with
  // residual demand and returns those origins.
  std::vector<VertexId> refresh(const GreedyState& state, int threads, GreedyStats* stats) {
    (void)paths_from(state, threads, stats, false);
    return refreshed_;
  }

  // Path of commodity i in its origin's current tree, if the destination is reachable.
  std::optional<std::vector<EdgeId>> path_for(std::int32_t i) const {
    const Commodity& c = instance_->commodities[static_cast<std::size_t>(i)];
    const auto& tree = entries_.at(c.origin).tree;
    if (!tree.reachable(c.destination)) return std::nullopt;
    return tree.path_to(instance_->network, c.destination);
  }

  // Returns one path per commodity with positive residual demand and a live
  // <=L-hop route, in commodity order.
  std::vector<GreedyPath> paths(const GreedyState& state, int threads, GreedyStats* stats) {
    return paths_from(state, threads, stats, true);
  }

 private:
  std::vector<GreedyPath> paths_from(const GreedyState& state, int threads, GreedyStats* stats, bool collect) {
    const Instance& inst = *instance_;
    std::map<VertexId, std::vector<VertexId>> targets;
    for (std::size_t i = 0; i < inst.commodities.size(); ++i)
      if (state.residual_demand[i] > 0.0) targets[inst.commodities[i].origin].push_back(inst.commodities[i].destination);

    std::vector<std::pair<VertexId, Entry*>> stale;
    for (auto& [origin, dests] : targets) {
      auto& entry = entries_[origin];
      if (!entry.valid) stale.emplace_back(origin, &entry);
    }
    const auto& live = state.live;
    parallel_for(stale.size(), threads, [&](std::size_t j) {
      const auto [origin, entry] = stale[j];
      const auto& dests = targets.at(origin);
      entry->tree = hop_shortest_path_tree(
          inst.network, origin, inst.hop_bound,
          [&live](EdgeId e) { return live[static_cast<std::size_t>(e)] != 0; }, dests);
      entry->valid = true;
    });
    if (stats) stats->searches += static_cast<std::int64_t>(stale.size());
    refreshed_.clear();
    for (const auto& [origin, entry] : stale) refreshed_.push_back(origin);
    if (!collect) return {};

    std::vector<GreedyPath> out;
    for (std::size_t i = 0; i < inst.commodities.size(); ++i) {
      if (!(state.residual_demand[i] > 0.0)) continue;
      const Commodity& c = inst.commodities[i];
      const auto& tree = entries_.at(c.origin).tree;
      if (!tree.reachable(c.destination)) continue;
      out.push_back(GreedyPath{static_cast<std::int32_t>(i), tree.path_to(inst.network, c.destination)});
    }
    return out;
  }

  struct Entry {
    HopBoundedPathTree tree;
    bool valid = false;
  };
  const Instance* instance_;
  std::map<VertexId, Entry> entries_;
  std::vector<VertexId> refreshed_;
};

}  // namespace detail

// Hop-shortest <=L path in the live residual graph for each commodity with
// positive residual demand; commodities without such a path are left out.
inline std::vector<GreedyPath> rebuild_path_set(const GreedyState& state, const Instance& instance,
                                                int threads = 1) {
  detail::OriginTreeCache cache(instance);
  return cache.paths(state, threads, nullptr);
}

inline GreedyResult solve_greedy(const Instance& instance, const GreedyOptions& options = {}) {
  check_instance(instance);
  const Network& g = instance.network;
  GreedyResult result;
  GreedyStats& stats = result.stats;
  GreedyState state = GreedyState::initial(instance);
  detail::OriginTreeCache cache(instance);

  std::map<VertexId, std::vector<std::int32_t>> by_origin;
  for (std::size_t i = 0; i < instance.commodities.size(); ++i)
    by_origin[instance.commodities[i].origin].push_back(static_cast<std::int32_t>(i));

  // Longest path first; lower commodity index on equal hop counts. Only the
  // commodities whose origin tree was recomputed get a new entry.
  std::set<std::pair<std::int64_t, std::int32_t>> order;
  std::vector<std::vector<EdgeId>> current(instance.commodities.size());
  const auto enqueue = [&](std::int32_t i) {
    current[static_cast<std::size_t>(i)] = std::move(*cache.path_for(i));
    order.emplace(-static_cast<std::int64_t>(current[static_cast<std::size_t>(i)].size()), i);
  };
  const auto refresh = [&] {
    ++stats.rebuilds;
    for (VertexId origin : cache.refresh(state, options.threads, &stats))
      for (std::int32_t i : by_origin.at(origin)) {
        const auto idx = static_cast<std::size_t>(i);
        order.erase({-static_cast<std::int64_t>(current[idx].size()), i});
        if (state.residual_demand[idx] > 0.0 && cache.path_for(i)) enqueue(i);
      }
  };

  std::map<std::pair<std::int32_t, std::vector<EdgeId>>, std::size_t> flow_index;
  refresh();
  while (!order.empty()) {
    const std::int32_t commodity = order.begin()->second;
    order.erase(order.begin());
    ++stats.iterations;
    const auto i = static_cast<std::size_t>(commodity);
    const std::vector<EdgeId>& path = current[i];

    double bottleneck = kInfinity;
    for (EdgeId e : path) bottleneck = std::min(bottleneck, state.residual_capacity[static_cast<std::size_t>(e)]);
    const double amount = std::min(bottleneck, state.residual_demand[i]);
    state.residual_demand[i] -= amount;

    bool deleted = false;
    for (EdgeId e : path) {
      double& r = state.residual_capacity[static_cast<std::size_t>(e)];
      r -= amount;
      if (r <= 0.0) {
        r = 0.0;
        state.live[static_cast<std::size_t>(e)] = 0;
        cache.invalidate_edge(e);
        ++stats.deleted_edges;
        deleted = true;
      }
    }

    auto [it, inserted] = flow_index.try_emplace({commodity, path}, result.solution.path_flows.size());
    if (inserted) {
      PathFlow pf;
      pf.commodity = commodity;
      pf.vertices = vertices_of(g, instance.commodities[i].origin, path);
      pf.edges = path;
      result.solution.path_flows.push_back(std::move(pf));
    }
    result.solution.path_flows[it->second].amount += amount;

    if (deleted) {
      refresh();
    } else if (state.residual_demand[i] > 0.0) {
      order.emplace(-static_cast<std::int64_t>(path.size()), commodity);
    }
  }
  result.solution.recompute_total();
  return result;
}

}  // namespace lbmcf
