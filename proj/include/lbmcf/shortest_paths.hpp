#pragma once

// Hop-bounded shortest paths.
//
// truncated_bellman_ford runs L synchronous Bellman-Ford rounds: round t only
// reads labels produced by round t-1, so a label set in round t belongs to a
// path of exactly t edges. The edge that set each label is remembered per
// round, which keeps the recorded paths within the hop bound even when a
// vertex on the path is improved again in a later round.

#include <algorithm>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "lbmcf/types.hpp"

namespace lbmcf {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct HopBoundedPathTree {
  VertexId source = 0;
  std::int32_t hop_bound = 0;
  std::vector<double> dist;          // kInfinity where unreachable within hop_bound
  std::vector<std::int32_t> hops;    // edges on the recorded path, -1 if unreachable
  std::vector<EdgeId> parent_edge;   // last edge of the recorded path, kNoEdge at source/unreachable

  // Row t holds the edge that set each vertex label in round t. Empty when
  // parent_edge chains are already consistent (BFS trees).
  std::vector<EdgeId> round_parent;

  bool reachable(VertexId v) const { return hops[static_cast<std::size_t>(v)] >= 0; }

  // Edge sequence of the recorded path from source to v (empty if v is the
  // source or unreachable).
  std::vector<EdgeId> path_to(const Network& network, VertexId v) const {
    std::vector<EdgeId> path;
    if (!reachable(v)) return path;
    const auto n = static_cast<std::size_t>(network.vertex_count());
    std::int32_t round = hops[static_cast<std::size_t>(v)];
    path.resize(static_cast<std::size_t>(round));
    VertexId at = v;
    while (round > 0) {
      const EdgeId e = round_parent.empty()
                           ? parent_edge[static_cast<std::size_t>(at)]
                           : round_parent[static_cast<std::size_t>(round) * n + static_cast<std::size_t>(at)];
      path[static_cast<std::size_t>(round - 1)] = e;
      at = network.edge(e).tail;
      --round;
    }
    return path;
  }
};

// Minimum-length paths with at most `hop_bound` edges from `source` under
// strictly positive edge lengths. Equal-length candidates found in the same
// round are resolved in favour of the smaller edge index; a label from an
// earlier round is kept on ties.
inline HopBoundedPathTree truncated_bellman_ford(const Network& network, std::span<const double> lengths,
                                                 VertexId source, std::int32_t hop_bound) {
  const auto n = static_cast<std::size_t>(network.vertex_count());
  HopBoundedPathTree tree;
  tree.source = source;
  tree.hop_bound = hop_bound;
  tree.dist.assign(n, kInfinity);
  tree.hops.assign(n, -1);
  tree.parent_edge.assign(n, kNoEdge);
  tree.round_parent.assign(static_cast<std::size_t>(hop_bound + 1) * n, kNoEdge);

  const auto s = static_cast<std::size_t>(source);
  tree.dist[s] = 0.0;
  tree.hops[s] = 0;

  std::vector<double> previous = tree.dist;
  std::vector<VertexId> active{source};
  std::vector<VertexId> changed;
  std::vector<char> changed_now(n, 0);

  for (std::int32_t round = 1; round <= hop_bound && !active.empty(); ++round) {
    EdgeId* row = tree.round_parent.data() + static_cast<std::size_t>(round) * n;
    changed.clear();
    for (VertexId u : active) {
      const double base = previous[static_cast<std::size_t>(u)];
      for (EdgeId e : network.out_edges(u)) {
        const auto w = static_cast<std::size_t>(network.edge(e).head);
        const double candidate = base + lengths[static_cast<std::size_t>(e)];
        double& label = tree.dist[w];
        if (candidate < label || (candidate == label && changed_now[w] && e < row[w])) {
          label = candidate;
          row[w] = e;
          if (!changed_now[w]) {
            changed_now[w] = 1;
            changed.push_back(static_cast<VertexId>(w));
          }
        }
      }
    }
    for (VertexId w : changed) {
      const auto i = static_cast<std::size_t>(w);
      changed_now[i] = 0;
      previous[i] = tree.dist[i];
      tree.hops[i] = round;
      tree.parent_edge[i] = row[i];
    }
    std::sort(changed.begin(), changed.end());
    active.swap(changed);
  }
  return tree;
}

struct AllEdges {
  constexpr bool operator()(EdgeId) const noexcept { return true; }
};

// Minimum-hop paths from `source`, truncated at `hop_bound`, over the edges
// accepted by `live`. Vertices are settled level by level; among the edges
// reaching a vertex from the previous level the smallest index becomes its
// parent, matching truncated_bellman_ford under unit lengths.
//
// When `targets` is non-empty the search stops after the level on which the
// last target was settled.
template <typename EdgeFilter = AllEdges>
HopBoundedPathTree hop_shortest_path_tree(const Network& network, VertexId source, std::int32_t hop_bound,
                                          EdgeFilter&& live = {}, std::span<const VertexId> targets = {}) {
  const auto n = static_cast<std::size_t>(network.vertex_count());
  HopBoundedPathTree tree;
  tree.source = source;
  tree.hop_bound = hop_bound;
  tree.dist.assign(n, kInfinity);
  tree.hops.assign(n, -1);
  tree.parent_edge.assign(n, kNoEdge);

  tree.dist[static_cast<std::size_t>(source)] = 0.0;
  tree.hops[static_cast<std::size_t>(source)] = 0;

  std::size_t unsettled_targets = 0;
  std::vector<char> is_target;
  if (!targets.empty()) {
    is_target.assign(n, 0);
    for (VertexId t : targets) {
      auto& flag = is_target[static_cast<std::size_t>(t)];
      if (!flag && t != source) ++unsettled_targets;
      flag = 1;
    }
    if (unsettled_targets == 0) return tree;
  }

  std::vector<VertexId> frontier{source};
  std::vector<VertexId> next;
  for (std::int32_t level = 1; level <= hop_bound && !frontier.empty(); ++level) {
    next.clear();
    for (VertexId u : frontier) {
      for (EdgeId e : network.out_edges(u)) {
        if (!live(e)) continue;
        const auto w = static_cast<std::size_t>(network.edge(e).head);
        if (tree.hops[w] == -1) {
          tree.hops[w] = level;
          tree.dist[w] = static_cast<double>(level);
          tree.parent_edge[w] = e;
          next.push_back(static_cast<VertexId>(w));
        } else if (tree.hops[w] == level && e < tree.parent_edge[w]) {
          tree.parent_edge[w] = e;
        }
      }
    }
    if (!is_target.empty()) {
      for (VertexId w : next)
        if (is_target[static_cast<std::size_t>(w)]) --unsettled_targets;
      if (unsettled_targets == 0) break;
    }
    std::sort(next.begin(), next.end());
    frontier.swap(next);
  }
  return tree;
}

struct PruneResult {
  Instance instance;                    // only the commodities that can be routed
  std::vector<Commodity> removed;
  std::vector<std::int32_t> kept_index; // original index of each surviving commodity
};

// Drops every commodity whose destination is more than L hops from its origin.
inline PruneResult prune_unreachable_pairs(const Instance& instance) {
  PruneResult result;
  result.instance.network = instance.network;
  result.instance.hop_bound = instance.hop_bound;

  std::vector<std::pair<VertexId, HopBoundedPathTree>> trees;
  for (std::size_t i = 0; i < instance.commodities.size(); ++i) {
    const Commodity& c = instance.commodities[i];
    auto it = std::find_if(trees.begin(), trees.end(), [&](const auto& p) { return p.first == c.origin; });
    if (it == trees.end()) {
      trees.emplace_back(c.origin, hop_shortest_path_tree(instance.network, c.origin, instance.hop_bound));
      it = std::prev(trees.end());
    }
    if (it->second.reachable(c.destination)) {
      result.instance.commodities.push_back(c);
      result.kept_index.push_back(static_cast<std::int32_t>(i));
    } else {
      result.removed.push_back(c);
    }
  }
  return result;
}

}  // namespace lbmcf
