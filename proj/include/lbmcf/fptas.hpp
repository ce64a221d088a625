#pragma once

// (1 - omega)-approximation for hop-bounded maximum multicommodity flow.
//
// The solver maintains a length l(e) per edge, starting at delta, and works in
// phases r = 1..r_max. During phase r every origin group repeatedly takes its
// shortest <=L-hop path P while l(P) < min(1, delta (1+eps)^r), routes the
// bottleneck capacity u along P scaled down by sigma = log_{1+eps}((1+eps)/delta),
// and multiplies l(e) by (1 + eps u / u(e)) on P. Scaled this way the routed
// flow never exceeds any capacity, and D(l)/alpha(l) with D(l) = sum_e l(e) u(e)
// bounds the optimum from above at every moment.
//
// Finite demands are handled by giving every commodity a private source vertex
// joined to its origin by an edge whose capacity is the demand, and allowing one
// more hop. Commodities attached to the same origin share one shortest-path run.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lbmcf/shortest_paths.hpp"
#include "lbmcf/types.hpp"

namespace lbmcf {

struct FptasParams {
  double omega = 0.0;    // guaranteed relative gap: result >= (1 - omega) OPT
  double epsilon = 0.0;  // length update step
  double delta = 0.0;    // initial edge length
  std::int64_t r_max = 0;
  double sigma = 0.0;    // log_{1+eps}((1+eps)/delta), the flow scaling denominator
  std::int32_t hop_bound = 0;
};

// Parameters for a given step size. `omega` is set to the gap implied by
// epsilon, 1 - (1-eps)^2/(1+eps).
inline FptasParams params_from_epsilon(double epsilon, std::int32_t hop_bound) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  if (hop_bound < 1) throw ParameterError("hop bound must be at least 1");
  FptasParams p;
  p.epsilon = epsilon;
  p.hop_bound = hop_bound;
  p.omega = 1.0 - (1.0 - epsilon) * (1.0 - epsilon) / (1.0 + epsilon);

  const double log1pe = std::log1p(epsilon);
  // delta = (1+eps) ((1+eps) L)^(-1/eps), evaluated in log space.
  const double log_delta = log1pe - std::log((1.0 + epsilon) * hop_bound) / epsilon;
  if (log_delta < std::log(1e-300))
    throw ParameterError("epsilon too small: initial length underflows double precision");
  p.delta = std::exp(log_delta);
  p.sigma = (log1pe - log_delta) / log1pe;
  p.r_max = static_cast<std::int64_t>(std::floor(p.sigma));

  // The approximation argument needs ln(1/(L delta)) / ln((1+eps)/delta) >= 1 - eps;
  // with this delta it holds with equality.
  const double ratio = (-std::log(static_cast<double>(hop_bound)) - log_delta) / (log1pe - log_delta);
  if (ratio < (1.0 - epsilon) * (1.0 - 1e-12))
    throw std::logic_error("delta violates the approximation ratio condition");
  return p;
}

// Step size for a target gap omega: the root of eps^2 - (3 - omega) eps + omega = 0
// in (0, 1), which makes (1-eps)^2/(1+eps) = 1 - omega.
inline FptasParams derive_params(double omega, std::int32_t hop_bound) {
  if (!(omega > 0.0 && omega < 1.0)) throw ParameterError("omega must lie in (0, 1)");
  const double b = 3.0 - omega;
  const double epsilon = (b - std::sqrt(b * b - 4.0 * omega)) / 2.0;
  FptasParams p = params_from_epsilon(epsilon, hop_bound);
  if ((1.0 - epsilon) * (1.0 - epsilon) / (1.0 + epsilon) < (1.0 - omega) * (1.0 - 1e-12))
    throw std::logic_error("epsilon does not meet the requested guarantee");
  p.omega = omega;
  return p;
}

// ---------------------------------------------------------------------------
// Finite-demand reduction
// ---------------------------------------------------------------------------

struct ReductionMap {
  Instance original;
  Instance expanded;                // n + k vertices, m + k edges, L + 1, all demands unbounded
  std::vector<VertexId> source_copy;  // new origin of commodity i
  std::vector<EdgeId> feeder_edge;    // source_copy[i] -> original origin, capacity d_i
};

inline ReductionMap reduce_finite_demands(const Instance& instance) {
  const Network& g = instance.network;
  const auto n = g.vertex_count();
  const auto m = g.edge_count();
  const auto k = instance.commodity_count();
  const double unbounding = g.total_capacity();

  ReductionMap map;
  map.original = instance;
  std::vector<Edge> edges = g.edges();
  edges.reserve(static_cast<std::size_t>(m + k));
  for (std::int32_t i = 0; i < k; ++i) {
    const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
    const VertexId copy = n + i;
    map.source_copy.push_back(copy);
    map.feeder_edge.push_back(m + i);
    edges.push_back(Edge{copy, c.origin, c.unbounded() ? unbounding : c.demand});
    map.expanded.commodities.push_back(Commodity{copy, c.destination, kUnbounded});
  }
  map.expanded.network = Network(n + k, std::move(edges));
  map.expanded.hop_bound = instance.hop_bound + 1;
  return map;
}

// Maps a solution of the expanded instance back onto the original one by
// dropping the feeder edge from every path.
inline FlowSolution map_back(const ReductionMap& map, const FlowSolution& expanded_solution) {
  FlowSolution out;
  out.path_flows.reserve(expanded_solution.path_flows.size());
  for (const PathFlow& pf : expanded_solution.path_flows) {
    if (pf.edges.empty() || pf.edges.front() != map.feeder_edge[static_cast<std::size_t>(pf.commodity)])
      throw std::logic_error("expanded path does not start with its feeder edge");
    PathFlow back;
    back.commodity = pf.commodity;
    back.edges.assign(pf.edges.begin() + 1, pf.edges.end());
    back.vertices.assign(pf.vertices.begin() + 1, pf.vertices.end());
    back.amount = pf.amount;
    out.path_flows.push_back(std::move(back));
  }
  out.recompute_total();
  return out;
}

// ---------------------------------------------------------------------------
// Dual bound
// ---------------------------------------------------------------------------

// D(l) / alpha(l): sum of l(e) u(e) over the shortest <=L-hop length between any
// commodity's endpoints. Scaling l by 1/alpha gives a feasible dual solution,
// so the value bounds the unbounded-demand optimum from above.
inline double dual_upper_bound(const Network& network, std::span<const Commodity> commodities,
                               std::int32_t hop_bound, std::span<const double> lengths) {
  double volume = 0.0;
  for (EdgeId e = 0; e < network.edge_count(); ++e)
    volume += lengths[static_cast<std::size_t>(e)] * network.edge(e).capacity;

  double alpha = kInfinity;
  std::map<VertexId, HopBoundedPathTree> trees;
  for (const Commodity& c : commodities) {
    auto it = trees.find(c.origin);
    if (it == trees.end())
      it = trees.emplace(c.origin, truncated_bellman_ford(network, lengths, c.origin, hop_bound)).first;
    alpha = std::min(alpha, it->second.dist[static_cast<std::size_t>(c.destination)]);
  }
  if (!std::isfinite(alpha))
    throw ParameterError("dual bound undefined: no commodity is routable within the hop bound");
  return volume / alpha;
}

// ---------------------------------------------------------------------------
// Unbounded-demand solver
// ---------------------------------------------------------------------------

struct FptasStats {
  std::int64_t augmentations = 0;
  std::int64_t phases_completed = 0;
  std::int64_t bellman_ford_calls = 0;
  double final_dual_bound = 0.0;
  bool terminated_early = false;
};

struct FptasOptions {
  // Stop once the flow is within the guaranteed ratio of the best dual bound.
  bool early_termination = true;
};

struct FptasRun {
  FlowSolution solution;
  std::vector<double> lengths;
  FptasStats stats;
};

namespace detail {

// Commodities whose shortest paths come from one Bellman-Ford run. A commodity
// whose origin has no in-edges and a single out-edge (a reduction source copy)
// is served from the head of that edge with one hop less.
struct OriginGroup {
  VertexId root = 0;
  std::int32_t budget = 0;
  std::vector<std::int32_t> members;
  double lower_bound = 0.0;  // lengths only grow, so old shortest lengths stay lower bounds
};

inline std::vector<OriginGroup> group_origins(const Instance& instance, std::vector<EdgeId>& feeder) {
  const Network& g = instance.network;
  std::map<std::pair<VertexId, std::int32_t>, std::vector<std::int32_t>> by_root;
  feeder.assign(instance.commodities.size(), kNoEdge);
  for (std::int32_t i = 0; i < instance.commodity_count(); ++i) {
    const VertexId o = instance.commodities[static_cast<std::size_t>(i)].origin;
    VertexId root = o;
    std::int32_t budget = instance.hop_bound;
    if (g.in_edges(o).empty() && g.out_edges(o).size() == 1) {
      feeder[static_cast<std::size_t>(i)] = g.out_edges(o)[0];
      root = g.edge(g.out_edges(o)[0]).head;
      budget = instance.hop_bound - 1;
    }
    by_root[{root, budget}].push_back(i);
  }
  std::vector<OriginGroup> groups;
  for (auto& [key, members] : by_root) groups.push_back(OriginGroup{key.first, key.second, std::move(members), 0.0});
  return groups;
}

}  // namespace detail

inline FptasRun solve_unbounded(const Instance& instance, const FptasParams& params,
                                const FptasOptions& options = {}) {
  if (params.hop_bound != instance.hop_bound)
    throw ParameterError("parameters were derived for hop bound " + std::to_string(params.hop_bound) +
                         ", instance has " + std::to_string(instance.hop_bound));
  for (const Commodity& c : instance.commodities)
    if (!c.unbounded()) throw ParameterError("solve_unbounded requires unbounded demands");

  const Network& g = instance.network;
  const auto m = static_cast<std::size_t>(g.edge_count());
  const double eps = params.epsilon;

  FptasRun run;
  run.lengths.assign(m, params.delta);
  auto& len = run.lengths;
  FptasStats& stats = run.stats;

  std::vector<EdgeId> feeder;
  auto groups = detail::group_origins(instance, feeder);

  std::map<std::pair<std::int32_t, std::vector<EdgeId>>, std::size_t> flow_index;
  double routed = 0.0;
  double best_bound = kInfinity;

  const auto volume = [&] {
    double d = 0.0;
    for (std::size_t e = 0; e < m; ++e) d += len[e] * g.edges()[e].capacity;
    return d;
  };

  for (std::int64_t r = 1; r <= params.r_max && !groups.empty(); ++r) {
    const double threshold = std::min(1.0, params.delta * std::pow(1.0 + eps, static_cast<double>(r)));
    for (auto& group : groups) {
      if (group.lower_bound >= threshold) continue;
      while (true) {
        const auto tree = truncated_bellman_ford(g, len, group.root, group.budget);
        ++stats.bellman_ford_calls;

        std::int32_t best = -1;
        double best_length = kInfinity;
        VertexId best_dest = 0;
        for (std::int32_t i : group.members) {
          const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
          const EdgeId f = feeder[static_cast<std::size_t>(i)];
          // An exhausted demand has prefix >= 1 >= threshold and is never picked,
          // but it still counts towards the group minimum.
          const double prefix = f == kNoEdge ? 0.0 : len[static_cast<std::size_t>(f)];
          const double total = prefix + tree.dist[static_cast<std::size_t>(c.destination)];
          if (total < best_length || (total == best_length && best >= 0 && c.destination < best_dest)) {
            best = i;
            best_length = total;
            best_dest = c.destination;
          }
        }
        group.lower_bound = best_length;
        if (best < 0 || !(best_length < threshold)) break;

        const Commodity& c = instance.commodities[static_cast<std::size_t>(best)];
        std::vector<EdgeId> path;
        if (feeder[static_cast<std::size_t>(best)] != kNoEdge) path.push_back(feeder[static_cast<std::size_t>(best)]);
        const auto tail = tree.path_to(g, c.destination);
        path.insert(path.end(), tail.begin(), tail.end());

        double bottleneck = kInfinity;
        for (EdgeId e : path) bottleneck = std::min(bottleneck, g.edge(e).capacity);
        for (EdgeId e : path) len[static_cast<std::size_t>(e)] *= 1.0 + eps * (bottleneck / g.edge(e).capacity);

        const double amount = bottleneck / params.sigma;
        auto [it, inserted] = flow_index.try_emplace({best, path}, run.solution.path_flows.size());
        if (inserted) {
          PathFlow pf;
          pf.commodity = best;
          pf.vertices = vertices_of(g, c.origin, path);
          pf.edges = std::move(path);
          run.solution.path_flows.push_back(std::move(pf));
        }
        run.solution.path_flows[it->second].amount += amount;
        routed += amount;
        ++stats.augmentations;
      }
    }
    ++stats.phases_completed;

    if (options.early_termination && routed > 0.0) {
      // Cached group minima are lower bounds on the current alpha, so this is
      // a valid (slightly weaker) dual bound that needs no extra path search.
      double alpha_low = kInfinity;
      for (const auto& group : groups) alpha_low = std::min(alpha_low, group.lower_bound);
      if (std::isfinite(alpha_low) && alpha_low > 0.0) {
        best_bound = std::min(best_bound, volume() / alpha_low);
        if (routed >= (1.0 - params.omega) * best_bound) {
          stats.terminated_early = true;
          break;
        }
      }
    }
  }

  run.solution.recompute_total();

  if (!instance.commodities.empty()) {
    best_bound = std::min(best_bound, dual_upper_bound(g, instance.commodities, instance.hop_bound, len));
    // Zeroing the feeder lengths yields another feasible dual point; it is often
    // tighter when feeders stand for unbounded demands.
    bool has_feeder = false;
    auto stripped = len;
    for (EdgeId f : feeder)
      if (f != kNoEdge) {
        stripped[static_cast<std::size_t>(f)] = 0.0;
        has_feeder = true;
      }
    if (has_feeder)
      best_bound = std::min(best_bound, dual_upper_bound(g, instance.commodities, instance.hop_bound, stripped));
  } else {
    best_bound = 0.0;
  }
  stats.final_dual_bound = best_bound;
  return run;
}

// ---------------------------------------------------------------------------
// Full pipeline
// ---------------------------------------------------------------------------

struct FptasResult {
  FlowSolution solution;  // commodity indices refer to the input instance
  FptasStats stats;
  FptasParams params;
  double upper_bound = 0.0;
  double omega_prime = 0.0;  // (UB - g) / UB
  std::vector<Commodity> pruned;
  std::int32_t expanded_edge_count = 0;
  std::vector<double> final_lengths;  // over the expanded network
};

inline FptasResult solve_fptas(const Instance& instance, double omega, const FptasOptions& options = {}) {
  check_instance(instance);
  if (!(omega > 0.0 && omega < 1.0)) throw ParameterError("omega must lie in (0, 1)");

  FptasResult result;
  auto pruned = prune_unreachable_pairs(instance);
  result.pruned = pruned.removed;
  result.params = derive_params(omega, instance.hop_bound + 1);
  if (pruned.instance.commodities.empty()) return result;

  const auto reduction = reduce_finite_demands(pruned.instance);
  auto run = solve_unbounded(reduction.expanded, result.params, options);

  result.solution = map_back(reduction, run.solution);
  for (PathFlow& pf : result.solution.path_flows) pf.commodity = pruned.kept_index[static_cast<std::size_t>(pf.commodity)];
  result.stats = run.stats;
  result.upper_bound = run.stats.final_dual_bound;
  result.omega_prime =
      result.upper_bound > 0.0 ? std::max(0.0, (result.upper_bound - result.solution.total_value) / result.upper_bound) : 0.0;
  result.expanded_edge_count = reduction.expanded.network.edge_count();
  result.final_lengths = std::move(run.lengths);
  return result;
}

}  // namespace lbmcf
