#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "lbmcf/types.hpp"

namespace lbmcf {

// Relative tolerance for capacity and demand checks.
inline constexpr double kFeasibilityTolerance = 1e-9;

struct ValidationReport {
  bool feasible = true;
  double max_capacity_violation = 0.0;  // max_e (f(e) - u(e)) / u(e), clamped at 0
  double max_demand_violation = 0.0;    // max_i (|f_i| - d_i) / d_i, clamped at 0
  std::int32_t max_hops_violation = 0;  // max over paths of (hops - L), clamped at 0
  double total_flow = 0.0;
};

// Throws StructuralError unless `pf` is a path of the network from the origin
// to the destination of its commodity.
inline void check_path_structure(const Instance& instance, const PathFlow& pf) {
  const auto fail = [&](const std::string& what) {
    throw StructuralError("path-flow of commodity " + std::to_string(pf.commodity) + ": " + what);
  };
  if (pf.commodity < 0 || pf.commodity >= instance.commodity_count()) fail("commodity index out of range");
  if (!(pf.amount >= 0.0)) fail("negative amount");
  if (pf.edges.empty()) fail("path has no edges");
  if (pf.vertices.size() != pf.edges.size() + 1) fail("vertex and edge sequences disagree in length");
  const Commodity& c = instance.commodities[static_cast<std::size_t>(pf.commodity)];
  if (pf.vertices.front() != c.origin || pf.vertices.back() != c.destination)
    fail("endpoints do not match the commodity");
  const Network& g = instance.network;
  for (std::size_t h = 0; h < pf.edges.size(); ++h) {
    const EdgeId e = pf.edges[h];
    if (e < 0 || e >= g.edge_count()) fail("edge index out of range");
    if (g.edge(e).tail != pf.vertices[h] || g.edge(e).head != pf.vertices[h + 1])
      fail("edge " + std::to_string(e) + " does not join consecutive path vertices");
  }
}

inline std::vector<double> aggregate_edge_flows(const Network& network, const FlowSolution& solution) {
  std::vector<double> flow(static_cast<std::size_t>(network.edge_count()), 0.0);
  for (const PathFlow& pf : solution.path_flows)
    for (EdgeId e : pf.edges) flow[static_cast<std::size_t>(e)] += pf.amount;
  return flow;
}

inline ValidationReport validate_solution(const Instance& instance, const FlowSolution& solution) {
  for (const PathFlow& pf : solution.path_flows) check_path_structure(instance, pf);

  ValidationReport report;
  const Network& g = instance.network;
  const auto flow = aggregate_edge_flows(g, solution);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const double cap = g.edge(e).capacity;
    report.max_capacity_violation =
        std::max(report.max_capacity_violation, (flow[static_cast<std::size_t>(e)] - cap) / cap);
  }

  std::vector<double> per_commodity(instance.commodities.size(), 0.0);
  for (const PathFlow& pf : solution.path_flows) {
    per_commodity[static_cast<std::size_t>(pf.commodity)] += pf.amount;
    report.max_hops_violation = std::max(report.max_hops_violation, pf.hops() - instance.hop_bound);
    report.total_flow += pf.amount;
  }
  for (std::size_t i = 0; i < per_commodity.size(); ++i) {
    const double d = instance.commodities[i].demand;
    if (is_unbounded(d)) continue;
    report.max_demand_violation = std::max(report.max_demand_violation, (per_commodity[i] - d) / d);
  }

  report.feasible = report.max_capacity_violation <= kFeasibilityTolerance &&
                    report.max_demand_violation <= kFeasibilityTolerance &&
                    report.max_hops_violation <= 0;
  return report;
}

}  // namespace lbmcf
