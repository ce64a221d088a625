#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lbmcf {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr EdgeId kNoEdge = -1;

// Demand value used for commodities without an upper limit on their flow.
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

inline bool is_unbounded(double demand) { return std::isinf(demand); }

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A path-flow that does not describe a path of the network between the
// endpoints of its commodity.
class StructuralError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ParameterError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Network
// ---------------------------------------------------------------------------

struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  double capacity = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Directed graph with positive capacities. Parallel edges are kept distinct by
// their index. Out-edges of every vertex are stored in CSR form, in increasing
// edge-index order.
class Network {
 public:
  Network() = default;

  Network(std::int32_t vertex_count, std::vector<Edge> edges)
      : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ <= 0) throw ParameterError("network needs at least one vertex");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (e.tail < 0 || e.tail >= vertex_count_ || e.head < 0 || e.head >= vertex_count_)
        throw ParameterError("edge " + std::to_string(i) + " has an out-of-range endpoint");
      if (e.tail == e.head) throw ParameterError("edge " + std::to_string(i) + " is a self-loop");
      if (!(e.capacity > 0.0) || !std::isfinite(e.capacity))
        throw ParameterError("edge " + std::to_string(i) + " has a nonpositive capacity");
    }
    BuildIndex();
  }

  std::int32_t vertex_count() const noexcept { return vertex_count_; }
  std::int32_t edge_count() const noexcept { return static_cast<std::int32_t>(edges_.size()); }

  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const EdgeId> out_edges(VertexId v) const {
    const auto begin = out_offsets_[static_cast<std::size_t>(v)];
    const auto end = out_offsets_[static_cast<std::size_t>(v) + 1];
    return {out_list_.data() + begin, end - begin};
  }

  std::span<const EdgeId> in_edges(VertexId v) const {
    const auto begin = in_offsets_[static_cast<std::size_t>(v)];
    const auto end = in_offsets_[static_cast<std::size_t>(v) + 1];
    return {in_list_.data() + begin, end - begin};
  }

  double total_capacity() const {
    return std::accumulate(edges_.begin(), edges_.end(), 0.0,
                           [](double acc, const Edge& e) { return acc + e.capacity; });
  }

  friend bool operator==(const Network& a, const Network& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  void BuildIndex() {
    const auto n = static_cast<std::size_t>(vertex_count_);
    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    for (const Edge& e : edges_) {
      ++out_offsets_[static_cast<std::size_t>(e.tail) + 1];
      ++in_offsets_[static_cast<std::size_t>(e.head) + 1];
    }
    std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
    std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());
    out_list_.resize(edges_.size());
    in_list_.resize(edges_.size());
    std::vector<std::size_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
    std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      out_list_[out_fill[static_cast<std::size_t>(edges_[i].tail)]++] = static_cast<EdgeId>(i);
      in_list_[in_fill[static_cast<std::size_t>(edges_[i].head)]++] = static_cast<EdgeId>(i);
    }
  }

  std::int32_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_, in_offsets_;
  std::vector<EdgeId> out_list_, in_list_;
};

// ---------------------------------------------------------------------------
// Commodities and instances
// ---------------------------------------------------------------------------

struct Commodity {
  VertexId origin = 0;
  VertexId destination = 0;
  double demand = kUnbounded;

  bool unbounded() const { return is_unbounded(demand); }
  friend bool operator==(const Commodity&, const Commodity&) = default;
};

struct Instance {
  Network network;
  std::vector<Commodity> commodities;
  std::int32_t hop_bound = 1;

  std::int32_t commodity_count() const { return static_cast<std::int32_t>(commodities.size()); }
  friend bool operator==(const Instance&, const Instance&) = default;
};

// Checks the instance-level invariants that Network does not cover.
inline void check_instance(const Instance& instance) {
  if (instance.hop_bound < 1) throw ParameterError("hop bound must be at least 1");
  const auto n = instance.network.vertex_count();
  for (std::size_t i = 0; i < instance.commodities.size(); ++i) {
    const Commodity& c = instance.commodities[i];
    const auto tag = "commodity " + std::to_string(i);
    if (c.origin < 0 || c.origin >= n || c.destination < 0 || c.destination >= n)
      throw ParameterError(tag + " has an out-of-range endpoint");
    if (c.origin == c.destination) throw ParameterError(tag + " has origin equal to destination");
    if (!(c.demand > 0.0)) throw ParameterError(tag + " has a nonpositive demand");
  }
}

// ---------------------------------------------------------------------------
// Solutions
// ---------------------------------------------------------------------------

// Flow of one commodity along one path. `edges` pins down which of several
// parallel arcs carries the flow; `vertices` has edges.size() + 1 entries.
struct PathFlow {
  std::int32_t commodity = 0;
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  double amount = 0.0;

  std::int32_t hops() const { return static_cast<std::int32_t>(edges.size()); }
};

struct FlowSolution {
  std::vector<PathFlow> path_flows;
  double total_value = 0.0;

  void recompute_total() {
    total_value = 0.0;
    for (const PathFlow& pf : path_flows) total_value += pf.amount;
  }
};

// Builds the vertex sequence of an edge path starting at `origin`.
inline std::vector<VertexId> vertices_of(const Network& network, VertexId origin,
                                         std::span<const EdgeId> edges) {
  std::vector<VertexId> vertices;
  vertices.reserve(edges.size() + 1);
  vertices.push_back(origin);
  for (EdgeId e : edges) vertices.push_back(network.edge(e).head);
  return vertices;
}

}  // namespace lbmcf
