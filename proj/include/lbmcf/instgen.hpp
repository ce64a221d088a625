#pragma once

// Grid benchmark instances: b stacked a x a grids, bidirectional grid arcs of
// capacity 3600, and one arc from each node of grid g to a permuted node of
// grid g+1 with a random integer capacity in [1, 100].

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lbmcf/io.hpp"
#include "lbmcf/shortest_paths.hpp"
#include "lbmcf/types.hpp"

namespace lbmcf {

struct GridGenConfig {
  std::int32_t a = 6;
  std::int32_t b = 2;
  std::int32_t k = 15;
  double lambda = 0.6;
  std::uint64_t seed = 1;
  std::int32_t hop_bound = 9;

  void validate() const {
    if (a < 2) throw ParameterError("grid side a must be at least 2");
    if (b < 2) throw ParameterError("grid count b must be at least 2");
    if (k < 1) throw ParameterError("commodity count k must be at least 1");
    if (!(lambda > 0.0 && lambda <= 1.0)) throw ParameterError("lambda must lie in (0, 1]");
    if (hop_bound < 1) throw ParameterError("hop bound L must be at least 1");
  }
};

inline constexpr double kGridArcCapacity = 3600.0;
inline constexpr const char* kGeneratorRng = "mt19937_64";

namespace detail {

// Decorrelates the user seed from the per-purpose streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

}  // namespace detail

inline std::int64_t grid_edge_count(std::int64_t a, std::int64_t b) { return 4 * a * (a - 1) * b + a * a * (b - 1); }
inline std::int64_t grid_vertex_count(std::int64_t a, std::int64_t b) { return a * a * b; }

// Vertex (g, row, col) has id g*a*a + row*a + col.
inline Network generate_grid_network(const GridGenConfig& config) {
  config.validate();
  const std::int32_t a = config.a, b = config.b;
  const auto id = [a](std::int32_t g, std::int32_t row, std::int32_t col) { return g * a * a + row * a + col; };
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(grid_edge_count(a, b)));
  for (std::int32_t g = 0; g < b; ++g) {
    for (std::int32_t row = 0; row < a; ++row)
      for (std::int32_t col = 0; col < a; ++col) {
        if (col + 1 < a) {
          edges.push_back({id(g, row, col), id(g, row, col + 1), kGridArcCapacity});
          edges.push_back({id(g, row, col + 1), id(g, row, col), kGridArcCapacity});
        }
        if (row + 1 < a) {
          edges.push_back({id(g, row, col), id(g, row + 1, col), kGridArcCapacity});
          edges.push_back({id(g, row + 1, col), id(g, row, col), kGridArcCapacity});
        }
      }
  }
  auto rng = detail::make_rng(config.seed, 1);
  std::uniform_int_distribution<int> capacity(1, 100);
  std::vector<std::int32_t> perm(static_cast<std::size_t>(a * a));
  for (std::int32_t g = 0; g + 1 < b; ++g) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::int32_t j = 0; j < a * a; ++j)
      edges.push_back({g * a * a + j, (g + 1) * a * a + perm[static_cast<std::size_t>(j)],
                       static_cast<double>(capacity(rng))});
  }
  return Network(a * a * b, std::move(edges));
}

// Random distinct origin-destination pairs that are connected within L hops.
// Each pair gets demand lambda / c, where c is the largest edge congestion when
// every pair sends one unit along a hop-shortest path.
inline std::vector<Commodity> assign_demands_mode1(const Network& network, std::int32_t k, double lambda,
                                                   std::int32_t hop_bound, std::uint64_t seed) {
  const std::int64_t n = network.vertex_count();
  if (k < 1 || k > n * (n - 1)) throw ParameterError("commodity count must lie in [1, n(n-1)]");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw ParameterError("lambda must lie in (0, 1]");

  auto rng = detail::make_rng(seed, 2);
  std::uniform_int_distribution<VertexId> pick(0, network.vertex_count() - 1);
  std::set<std::pair<VertexId, VertexId>> used;
  std::vector<Commodity> commodities;
  std::vector<double> load(static_cast<std::size_t>(network.edge_count()), 0.0);
  const std::int64_t max_attempts = 1000 + 200 * static_cast<std::int64_t>(k);
  std::int64_t attempts = 0;
  while (static_cast<std::int32_t>(commodities.size()) < k) {
    if (++attempts > max_attempts)
      throw ParameterError("could not draw " + std::to_string(k) + " distinct pairs connected within L = " +
                           std::to_string(hop_bound) + " hops");
    const VertexId s = pick(rng), t = pick(rng);
    if (s == t || used.contains({s, t})) continue;
    const VertexId targets[] = {t};
    const auto tree = hop_shortest_path_tree(network, s, hop_bound, AllEdges{}, targets);
    if (!tree.reachable(t)) continue;
    used.insert({s, t});
    for (EdgeId e : tree.path_to(network, t)) load[static_cast<std::size_t>(e)] += 1.0;
    commodities.push_back({s, t, 1.0});
  }
  double congestion = 0.0;
  for (EdgeId e = 0; e < network.edge_count(); ++e)
    congestion = std::max(congestion, load[static_cast<std::size_t>(e)] / network.edge(e).capacity);
  for (auto& c : commodities) c.demand = lambda / congestion;
  return commodities;
}

inline Instance generate_grid_instance(const GridGenConfig& config) {
  config.validate();
  Network network = generate_grid_network(config);
  auto commodities = assign_demands_mode1(network, config.k, config.lambda, config.hop_bound, config.seed);
  return Instance{std::move(network), std::move(commodities), config.hop_bound};
}

inline std::vector<std::string> generator_header(const GridGenConfig& config) {
  return {
      "grid instance a=" + std::to_string(config.a) + " b=" + std::to_string(config.b) +
          " k=" + std::to_string(config.k) + " lambda=" + format_double(config.lambda) +
          " L=" + std::to_string(config.hop_bound),
      std::string("rng ") + kGeneratorRng + " seed=" + std::to_string(config.seed) + " demands=mode1",
  };
}

}  // namespace lbmcf
