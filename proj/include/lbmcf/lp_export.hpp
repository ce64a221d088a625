#pragma once

// LP formulations of the flow problem.
//
// Edge-flow model (ignores the hop bound, so its optimum is an upper bound):
//   max  sum_i netout_i            netout_i = sum_{e out of s_i} x_i(e) - sum_{e into s_i} x_i(e)
//   s.t. netout_i <= d_i           finite demands only
//        sum_i x_i(e) <= u(e)
//        inflow_i(v) = outflow_i(v) for v not in {s_i, t_i}
//
// Time-expanded model: layers 1..L+1 hold copies of V; each edge (v, w) has a
// copy (v_t, w_{t+1}) per layer step and every vertex a holdover (v_t, v_{t+1}).
// A unit of commodity i leaves s_i in layer 1 and must sit on t_i in the last
// layer, so it crosses at most L real edges. Rows: demand, joint capacity over
// all copies of an edge, conservation in the inner layers, and zero arrival at
// last-layer vertices other than t_i. Its optimum equals the hop-bounded optimum.

#include <string>
#include <vector>

#include "lbmcf/lp_model.hpp"
#include "lbmcf/types.hpp"

namespace lbmcf {

struct TimeExpandedNetwork {
  std::int32_t layers = 0;
  std::int32_t base_vertex_count = 0;
  std::int32_t base_edge_count = 0;
  std::vector<Edge> edges;           // capacities copied from the tagged edge, 0 for holdovers
  std::vector<EdgeId> original_edge; // tag per expanded edge, kNoEdge for holdovers

  // Layers are numbered from 1.
  VertexId vertex(VertexId v, std::int32_t layer) const { return (layer - 1) * base_vertex_count + v; }
  std::int32_t vertex_count() const { return layers * base_vertex_count; }
  std::int32_t edge_count() const { return static_cast<std::int32_t>(edges.size()); }

  // Index of the copy of edge e (or the holdover of vertex v) leaving `layer`.
  EdgeId movement_edge(EdgeId e, std::int32_t layer) const {
    return (layer - 1) * (base_edge_count + base_vertex_count) + e;
  }
  EdgeId holdover_edge(VertexId v, std::int32_t layer) const {
    return (layer - 1) * (base_edge_count + base_vertex_count) + base_edge_count + v;
  }
};

// Layer-major construction: for t = 1..layers-1, the m edge copies followed by
// the n holdovers.
inline TimeExpandedNetwork build_time_expanded(const Network& network, std::int32_t layers) {
  if (layers < 1) throw ParameterError("time-expanded network needs at least one layer");
  TimeExpandedNetwork tex;
  tex.layers = layers;
  tex.base_vertex_count = network.vertex_count();
  tex.base_edge_count = network.edge_count();
  const auto step = static_cast<std::size_t>(network.edge_count() + network.vertex_count());
  tex.edges.reserve(static_cast<std::size_t>(layers - 1) * step);
  for (std::int32_t t = 1; t < layers; ++t) {
    for (EdgeId e = 0; e < network.edge_count(); ++e) {
      const Edge& base = network.edge(e);
      tex.edges.push_back(Edge{tex.vertex(base.tail, t), tex.vertex(base.head, t + 1), base.capacity});
      tex.original_edge.push_back(e);
    }
    for (VertexId v = 0; v < network.vertex_count(); ++v) {
      tex.edges.push_back(Edge{tex.vertex(v, t), tex.vertex(v, t + 1), 0.0});
      tex.original_edge.push_back(kNoEdge);
    }
  }
  return tex;
}

inline std::string flow_variable_name(std::int32_t commodity, EdgeId edge) {
  return "x_" + std::to_string(commodity) + "_" + std::to_string(edge);
}

// Closed-form sizes, with k_finite the number of commodities with finite demand.
struct LpSize {
  std::int64_t variables = 0;
  std::int64_t constraints = 0;
};

inline LpSize edge_flow_lp_size(const Instance& instance) {
  const std::int64_t n = instance.network.vertex_count(), m = instance.network.edge_count();
  const std::int64_t k = instance.commodity_count();
  std::int64_t k_finite = 0;
  for (const auto& c : instance.commodities) k_finite += c.unbounded() ? 0 : 1;
  return {k * m, k_finite + m + k * (n - 2)};
}

inline LpSize time_expanded_lp_size(const Instance& instance) {
  const std::int64_t n = instance.network.vertex_count(), m = instance.network.edge_count();
  const std::int64_t k = instance.commodity_count(), L = instance.hop_bound;
  std::int64_t k_finite = 0;
  for (const auto& c : instance.commodities) k_finite += c.unbounded() ? 0 : 1;
  return {k * L * (m + n), k_finite + m + k * n * (L - 1) + k * (n - 1)};
}

inline LpModel export_edge_flow_lp(const Instance& instance) {
  const Network& g = instance.network;
  const auto k = instance.commodity_count();
  const auto m = g.edge_count();
  LpModel model;
  model.name = "edge-flow maximum multicommodity flow (hop bound ignored)";

  const auto var = [m](std::int32_t i, EdgeId e) { return i * m + e; };
  for (std::int32_t i = 0; i < k; ++i) {
    const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
    for (EdgeId e = 0; e < m; ++e) {
      double coef = 0.0;
      if (g.edge(e).tail == c.origin) coef = 1.0;
      if (g.edge(e).head == c.origin) coef = -1.0;
      model.add_variable(flow_variable_name(i, e), coef);
    }
  }

  const auto net_out = [&](std::int32_t i, VertexId s) {
    std::vector<LpTerm> terms;
    for (EdgeId e = 0; e < m; ++e) {
      if (g.edge(e).tail == s) terms.push_back({var(i, e), 1.0});
      if (g.edge(e).head == s) terms.push_back({var(i, e), -1.0});
    }
    return terms;
  };

  for (std::int32_t i = 0; i < k; ++i) {
    const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
    if (c.unbounded()) continue;
    model.rows.push_back({"dem_" + std::to_string(i), net_out(i, c.origin), RowSense::kLessEqual, c.demand});
  }
  for (EdgeId e = 0; e < m; ++e) {
    LpRow row{"cap_" + std::to_string(e), {}, RowSense::kLessEqual, g.edge(e).capacity};
    for (std::int32_t i = 0; i < k; ++i) row.terms.push_back({var(i, e), 1.0});
    model.rows.push_back(std::move(row));
  }
  for (std::int32_t i = 0; i < k; ++i) {
    const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (v == c.origin || v == c.destination) continue;
      LpRow row{"flow_" + std::to_string(i) + "_" + std::to_string(v), {}, RowSense::kEqual, 0.0};
      for (EdgeId e : g.in_edges(v)) row.terms.push_back({var(i, e), 1.0});
      for (EdgeId e : g.out_edges(v)) row.terms.push_back({var(i, e), -1.0});
      model.rows.push_back(std::move(row));
    }
  }
  return model;
}

inline LpModel export_time_expanded_lp(const Instance& instance) {
  const Network& g = instance.network;
  const auto n = g.vertex_count();
  const auto k = instance.commodity_count();
  const auto tex = build_time_expanded(g, instance.hop_bound + 1);
  const auto last = tex.layers;
  const auto me = tex.edge_count();

  LpModel model;
  model.name = "time-expanded hop-bounded multicommodity flow, L = " + std::to_string(instance.hop_bound);
  const auto var = [me](std::int32_t i, EdgeId e) { return i * me + e; };

  // In/out lists over the expanded graph.
  const auto nv = static_cast<std::size_t>(tex.vertex_count());
  std::vector<std::vector<EdgeId>> in(nv), out(nv);
  for (EdgeId e = 0; e < me; ++e) {
    out[static_cast<std::size_t>(tex.edges[static_cast<std::size_t>(e)].tail)].push_back(e);
    in[static_cast<std::size_t>(tex.edges[static_cast<std::size_t>(e)].head)].push_back(e);
  }

  for (std::int32_t i = 0; i < k; ++i) {
    const auto source = static_cast<std::size_t>(tex.vertex(instance.commodities[static_cast<std::size_t>(i)].origin, 1));
    std::vector<char> leaves_source(static_cast<std::size_t>(me), 0);
    for (EdgeId e : out[source]) leaves_source[static_cast<std::size_t>(e)] = 1;
    for (EdgeId e = 0; e < me; ++e)
      model.add_variable(flow_variable_name(i, e), leaves_source[static_cast<std::size_t>(e)] ? 1.0 : 0.0);
  }

  for (std::int32_t i = 0; i < k; ++i) {
    const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
    if (c.unbounded()) continue;
    LpRow row{"dem_" + std::to_string(i), {}, RowSense::kLessEqual, c.demand};
    for (EdgeId e : out[static_cast<std::size_t>(tex.vertex(c.origin, 1))]) row.terms.push_back({var(i, e), 1.0});
    model.rows.push_back(std::move(row));
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    LpRow row{"cap_" + std::to_string(e), {}, RowSense::kLessEqual, g.edge(e).capacity};
    for (std::int32_t i = 0; i < k; ++i)
      for (std::int32_t t = 1; t < last; ++t) row.terms.push_back({var(i, tex.movement_edge(e, t)), 1.0});
    model.rows.push_back(std::move(row));
  }
  for (std::int32_t i = 0; i < k; ++i) {
    for (std::int32_t t = 2; t < last; ++t) {
      for (VertexId v = 0; v < n; ++v) {
        const auto x = static_cast<std::size_t>(tex.vertex(v, t));
        LpRow row{"flow_" + std::to_string(i) + "_" + std::to_string(v) + "_" + std::to_string(t), {},
                  RowSense::kEqual, 0.0};
        for (EdgeId e : in[x]) row.terms.push_back({var(i, e), 1.0});
        for (EdgeId e : out[x]) row.terms.push_back({var(i, e), -1.0});
        model.rows.push_back(std::move(row));
      }
    }
  }
  for (std::int32_t i = 0; i < k; ++i) {
    const Commodity& c = instance.commodities[static_cast<std::size_t>(i)];
    for (VertexId v = 0; v < n; ++v) {
      if (v == c.destination) continue;
      LpRow row{"absorb_" + std::to_string(i) + "_" + std::to_string(v), {}, RowSense::kEqual, 0.0};
      for (EdgeId e : in[static_cast<std::size_t>(tex.vertex(v, last))]) row.terms.push_back({var(i, e), 1.0});
      model.rows.push_back(std::move(row));
    }
  }
  return model;
}

}  // namespace lbmcf
