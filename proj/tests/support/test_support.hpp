#pragma once

// Fixtures, random instances and brute-force reference computations shared by
// the unit tests and the acceptance runner. Nothing here calls into the
// solvers it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <vector>

#include "lbmcf/types.hpp"

namespace lbmcf::fixtures {

// s=0, a=1, b=2, t=3: s→a 3, a→t 5, s→b 4, b→t 2; one commodity (s, t, 10), L = 2.
inline Instance diamond_instance() {
  Network g(4, {{0, 1, 3.0}, {1, 3, 5.0}, {0, 2, 4.0}, {2, 3, 2.0}});
  return Instance{std::move(g), {{0, 3, 10.0}}, 2};
}

inline Instance single_edge_instance(double capacity, double demand, std::int32_t hop_bound = 1) {
  return Instance{Network(2, {{0, 1, capacity}}), {{0, 1, demand}}, hop_bound};
}

struct RandomSpec {
  std::int32_t max_vertices = 8;
  std::int32_t max_edges = 16;
  std::int32_t max_commodities = 3;
  std::int32_t max_hops = 4;
  bool integral = true;          // integer capacities and demands
  double unbounded_share = 0.4;  // chance a commodity has no demand cap
};

// Random small instance. Commodities have distinct pairs; nothing guarantees
// they are connected.
inline Instance random_instance(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  std::uniform_int_distribution<std::int32_t> n_dist(2, spec.max_vertices);
  const std::int32_t n = n_dist(rng);
  std::uniform_int_distribution<std::int32_t> m_dist(1, spec.max_edges);
  const std::int32_t m = m_dist(rng);
  std::uniform_int_distribution<VertexId> vertex(0, n - 1);
  std::uniform_int_distribution<int> small(1, 10);
  std::uniform_real_distribution<double> real(0.5, 10.0);
  const auto amount = [&] {
    return spec.integral ? static_cast<double>(small(rng)) : std::round(real(rng) * 8.0) / 8.0;
  };

  std::vector<Edge> edges;
  while (static_cast<std::int32_t>(edges.size()) < m) {
    const VertexId u = vertex(rng), v = vertex(rng);
    if (u != v) edges.push_back({u, v, amount()});
  }
  std::uniform_int_distribution<std::int32_t> k_dist(1, std::min(spec.max_commodities, n * (n - 1)));
  const std::int32_t k = k_dist(rng);
  std::vector<Commodity> commodities;
  std::bernoulli_distribution unbounded(spec.unbounded_share);
  while (static_cast<std::int32_t>(commodities.size()) < k) {
    const VertexId s = vertex(rng), t = vertex(rng);
    if (s == t) continue;
    const bool seen = std::any_of(commodities.begin(), commodities.end(),
                                  [&](const Commodity& c) { return c.origin == s && c.destination == t; });
    if (seen) continue;
    commodities.push_back({s, t, unbounded(rng) ? kUnbounded : amount()});
  }
  std::uniform_int_distribution<std::int32_t> l_dist(1, spec.max_hops);
  return Instance{Network(n, std::move(edges)), std::move(commodities), l_dist(rng)};
}

// Shortest length of a walk from source with at most hop_bound edges, by
// enumerating every such walk.
inline std::vector<double> brute_force_distances(const Network& g, const std::vector<double>& lengths,
                                                 VertexId source, std::int32_t hop_bound) {
  std::vector<double> best(static_cast<std::size_t>(g.vertex_count()), std::numeric_limits<double>::infinity());
  const auto walk = [&](auto&& self, VertexId v, std::int32_t depth, double sum) -> void {
    best[static_cast<std::size_t>(v)] = std::min(best[static_cast<std::size_t>(v)], sum);
    if (depth == hop_bound) return;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (g.edge(e).tail == v) self(self, g.edge(e).head, depth + 1, sum + lengths[static_cast<std::size_t>(e)]);
  };
  walk(walk, source, 0, 0.0);
  return best;
}

// Fewest edges on any walk from source, capped at hop_bound (-1 beyond it).
inline std::vector<std::int32_t> brute_force_hops(const Network& g, VertexId source, std::int32_t hop_bound) {
  std::vector<std::int32_t> hops(static_cast<std::size_t>(g.vertex_count()), -1);
  hops[static_cast<std::size_t>(source)] = 0;
  for (std::int32_t round = 1; round <= hop_bound; ++round)
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto tail = static_cast<std::size_t>(g.edge(e).tail), head = static_cast<std::size_t>(g.edge(e).head);
      if (hops[tail] == round - 1 && hops[head] == -1) hops[head] = round;
    }
  return hops;
}

// Single-commodity maximum flow by shortest augmenting paths. With a hop
// bound of at least n-1 this is the hop-bounded optimum of a one-commodity
// instance with unbounded demand.
inline double edmonds_karp(const Network& g, VertexId s, VertexId t) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<double>> residual(n, std::vector<double>(n, 0.0));
  for (const Edge& e : g.edges()) residual[static_cast<std::size_t>(e.tail)][static_cast<std::size_t>(e.head)] += e.capacity;
  double total = 0.0;
  while (true) {
    std::vector<int> parent(n, -1);
    parent[static_cast<std::size_t>(s)] = static_cast<int>(s);
    std::deque<std::size_t> queue{static_cast<std::size_t>(s)};
    while (!queue.empty() && parent[static_cast<std::size_t>(t)] == -1) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < n; ++v)
        if (parent[v] == -1 && residual[u][v] > 1e-12) {
          parent[v] = static_cast<int>(u);
          queue.push_back(v);
        }
    }
    if (parent[static_cast<std::size_t>(t)] == -1) return total;
    double push = std::numeric_limits<double>::infinity();
    for (std::size_t v = static_cast<std::size_t>(t); v != static_cast<std::size_t>(s);
         v = static_cast<std::size_t>(parent[v]))
      push = std::min(push, residual[static_cast<std::size_t>(parent[v])][v]);
    for (std::size_t v = static_cast<std::size_t>(t); v != static_cast<std::size_t>(s);
         v = static_cast<std::size_t>(parent[v])) {
      residual[static_cast<std::size_t>(parent[v])][v] -= push;
      residual[v][static_cast<std::size_t>(parent[v])] += push;
    }
    total += push;
  }
}

inline bool is_integral(double x) { return std::isfinite(x) && x == std::floor(x); }

}  // namespace lbmcf::fixtures
