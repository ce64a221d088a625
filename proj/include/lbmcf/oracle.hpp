#pragma once

// Exact optimum for small instances.
//
// Enumerates every simple path with at most L edges for each commodity and
// solves the path formulation
//   max sum_P x(P)  s.t.  sum_{P ∋ e} x(P) <= u(e),  sum_{P in P_i} x(P) <= d_i,  x >= 0
// in rational arithmetic. Restricting to simple paths loses nothing: cutting a
// cycle out of a walk keeps it within the hop bound and frees capacity.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lbmcf/lp_model.hpp"
#include "lbmcf/rational.hpp"
#include "lbmcf/simplex.hpp"
#include "lbmcf/types.hpp"

namespace lbmcf {

class OracleTooLarge : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  std::size_t max_paths = 100000;  // over the whole catalog
  // Bound on (constraints x columns) of the simplex tableau.
  std::size_t max_tableau_entries = 250'000;
};

using EdgePath = std::vector<EdgeId>;

// All simple paths from source to destination with at most hop_bound edges,
// in depth-first order with out-edges taken by increasing index.
inline std::vector<EdgePath> enumerate_paths(const Network& network, VertexId source, VertexId destination,
                                             std::int32_t hop_bound, std::size_t cap = OracleLimits{}.max_paths) {
  std::vector<EdgePath> paths;
  if (source == destination) return paths;
  std::vector<char> on_path(static_cast<std::size_t>(network.vertex_count()), 0);
  EdgePath current;

  const auto dfs = [&](auto&& self, VertexId v) -> void {
    if (static_cast<std::int32_t>(current.size()) == hop_bound) return;
    for (EdgeId e : network.out_edges(v)) {
      const VertexId w = network.edge(e).head;
      if (on_path[static_cast<std::size_t>(w)]) continue;
      current.push_back(e);
      if (w == destination) {
        if (paths.size() == cap)
          throw OracleTooLarge("more than " + std::to_string(cap) + " paths; instance too large for the oracle");
        paths.push_back(current);
      } else {
        on_path[static_cast<std::size_t>(w)] = 1;
        self(self, w);
        on_path[static_cast<std::size_t>(w)] = 0;
      }
      current.pop_back();
    }
  };
  on_path[static_cast<std::size_t>(source)] = 1;
  dfs(dfs, source);
  return paths;
}

struct PathCatalog {
  std::vector<std::vector<EdgePath>> per_commodity;

  std::size_t size() const {
    std::size_t total = 0;
    for (const auto& p : per_commodity) total += p.size();
    return total;
  }
};

inline PathCatalog build_path_catalog(const Instance& instance, const OracleLimits& limits = {}) {
  PathCatalog catalog;
  std::size_t remaining = limits.max_paths;
  for (const Commodity& c : instance.commodities) {
    auto paths = enumerate_paths(instance.network, c.origin, c.destination, instance.hop_bound, remaining);
    remaining -= paths.size();
    catalog.per_commodity.push_back(std::move(paths));
  }
  return catalog;
}

// The path formulation as an LpModel. Capacity rows are emitted for edges used
// by at least one path, demand rows for finite demands with at least one path.
inline LpModel export_path_lp(const Instance& instance, const PathCatalog& catalog) {
  const Network& g = instance.network;
  LpModel model;
  model.name = "path formulation";
  std::vector<std::vector<LpTerm>> by_edge(static_cast<std::size_t>(g.edge_count()));
  std::vector<std::vector<LpTerm>> by_commodity(instance.commodities.size());
  for (std::size_t i = 0; i < catalog.per_commodity.size(); ++i) {
    for (std::size_t p = 0; p < catalog.per_commodity[i].size(); ++p) {
      const auto var = model.add_variable("p_" + std::to_string(i) + "_" + std::to_string(p), 1.0);
      by_commodity[i].push_back({var, 1.0});
      for (EdgeId e : catalog.per_commodity[i][p]) by_edge[static_cast<std::size_t>(e)].push_back({var, 1.0});
    }
  }
  for (std::size_t i = 0; i < by_commodity.size(); ++i) {
    const Commodity& c = instance.commodities[i];
    if (c.unbounded() || by_commodity[i].empty()) continue;
    model.rows.push_back({"dem_" + std::to_string(i), std::move(by_commodity[i]), RowSense::kLessEqual, c.demand});
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto& terms = by_edge[static_cast<std::size_t>(e)];
    if (terms.empty()) continue;
    model.rows.push_back({"cap_" + std::to_string(e), std::move(terms), RowSense::kLessEqual, g.edge(e).capacity});
  }
  return model;
}

// Refuses models whose dense tableau would exceed the configured size.
inline void check_tableau_size(const LpModel& model, const OracleLimits& limits) {
  std::size_t extra = 0;
  for (const auto& row : model.rows) extra += row.sense == RowSense::kGreaterEqual ? 2 : 1;
  const std::size_t entries = model.row_count() * (model.variable_count() + extra + 1);
  if (entries > limits.max_tableau_entries)
    throw OracleTooLarge("exact LP would need " + std::to_string(entries) + " tableau entries (limit " +
                         std::to_string(limits.max_tableau_entries) + "); instance too large for the oracle");
}

struct ExactPathFlow {
  std::int32_t commodity = 0;
  EdgePath edges;
  Rational amount;
};

struct ExactResult {
  Rational optimum;
  std::vector<ExactPathFlow> path_flows;  // positive entries of an optimal basic solution
  FlowSolution solution;                  // the same flows in floating point
  std::size_t catalog_size = 0;
  std::int64_t pivots = 0;
};

inline ExactResult exact_optimum(const Instance& instance, const OracleLimits& limits = {}) {
  check_instance(instance);
  const auto catalog = build_path_catalog(instance, limits);
  const auto model = export_path_lp(instance, catalog);
  check_tableau_size(model, limits);
  const auto lp = solve_lp_exact(model);
  if (lp.status != LpStatus::kOptimal)
    throw std::logic_error(std::string("path formulation reported ") + to_string(lp.status));

  ExactResult result;
  result.optimum = lp.objective;
  result.catalog_size = catalog.size();
  result.pivots = lp.pivots;
  std::size_t var = 0;
  for (std::size_t i = 0; i < catalog.per_commodity.size(); ++i) {
    for (const EdgePath& path : catalog.per_commodity[i]) {
      const Rational& x = lp.values[var++];
      if (sgn(x) == 0) continue;
      result.path_flows.push_back({static_cast<std::int32_t>(i), path, x});
      PathFlow pf;
      pf.commodity = static_cast<std::int32_t>(i);
      pf.edges = path;
      pf.vertices = vertices_of(instance.network, instance.commodities[i].origin, path);
      pf.amount = to_double(x);
      result.solution.path_flows.push_back(std::move(pf));
    }
  }
  result.solution.recompute_total();
  return result;
}

// Exact optimum of an arbitrary LpModel (e.g. an exported formulation), with
// the same size guard.
inline ExactLpSolution solve_model_exact(const LpModel& model, const OracleLimits& limits = {}) {
  check_tableau_size(model, limits);
  return solve_lp_exact(model);
}

}  // namespace lbmcf
