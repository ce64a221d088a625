#pragma once

// Text formats for instances and solutions.
//
// Instance file (line oriented, '#' starts a comment):
//   lbmcf1 1
//   n m k L
//   tail head capacity          (m lines)
//   origin destination demand   (k lines, demand -1 means unbounded)
//
// Solution file:
//   commodity_index amount v0 v1 ... vh   (one line per path-flow)
//   total <value>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "lbmcf/types.hpp"

namespace lbmcf {

// Shortest decimal text that parses back to the same double.
inline std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace detail {

struct Line {
  std::size_t number = 0;
  std::vector<std::string_view> tokens;
};

// Splits a document into non-empty logical lines with comments removed.
// The returned views point into `text`.
inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

template <typename Int>
Int parse_int(std::string_view token, std::size_t line, const char* what) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
  return value;
}

inline double parse_real(std::string_view token, std::size_t line, const char* what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value))
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
  return value;
}

inline void expect_tokens(const Line& line, std::size_t count, const char* what) {
  if (line.tokens.size() != count)
    throw ParseError(line.number, std::string(what) + ": expected " + std::to_string(count) +
                                      " fields, found " + std::to_string(line.tokens.size()));
}

}  // namespace detail

// Merges commodities that share an (origin, destination) pair by summing their
// demands. The first occurrence fixes the position in the list.
inline std::vector<Commodity> merge_duplicate_commodities(const std::vector<Commodity>& input) {
  std::vector<Commodity> merged;
  std::map<std::pair<VertexId, VertexId>, std::size_t> position;
  for (const Commodity& c : input) {
    const auto [it, inserted] = position.emplace(std::pair{c.origin, c.destination}, merged.size());
    if (inserted) {
      merged.push_back(c);
    } else {
      merged[it->second].demand += c.demand;  // inf + x stays inf
    }
  }
  return merged;
}

inline Instance parse_instance(std::string_view text) {
  const auto lines = detail::tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty instance document");

  const auto& magic = lines[0];
  if (magic.tokens.size() != 2 || magic.tokens[0] != "lbmcf1" || magic.tokens[1] != "1")
    throw ParseError(magic.number, "expected header 'lbmcf1 1'");
  if (lines.size() < 2) throw ParseError(magic.number, "missing size line 'n m k L'");

  const auto& sizes = lines[1];
  detail::expect_tokens(sizes, 4, "size line");
  const auto n = detail::parse_int<std::int32_t>(sizes.tokens[0], sizes.number, "vertex count");
  const auto m = detail::parse_int<std::int32_t>(sizes.tokens[1], sizes.number, "edge count");
  const auto k = detail::parse_int<std::int32_t>(sizes.tokens[2], sizes.number, "commodity count");
  const auto hop_bound = detail::parse_int<std::int32_t>(sizes.tokens[3], sizes.number, "hop bound");
  if (n <= 0) throw ParseError(sizes.number, "vertex count must be positive");
  if (m < 0) throw ParseError(sizes.number, "edge count must be nonnegative");
  if (k < 1) throw ParseError(sizes.number, "at least one commodity is required");
  if (hop_bound < 1) throw ParseError(sizes.number, "hop bound must be at least 1");

  const std::size_t expected = 2 + static_cast<std::size_t>(m) + static_cast<std::size_t>(k);
  if (lines.size() < expected)
    throw ParseError(lines.back().number, "document ends early: expected " + std::to_string(m) +
                                              " edge lines and " + std::to_string(k) +
                                              " commodity lines");
  if (lines.size() > expected) throw ParseError(lines[expected].number, "unexpected trailing data");

  auto check_vertex = [n](std::string_view token, std::size_t line) {
    const auto v = detail::parse_int<std::int32_t>(token, line, "vertex id");
    if (v < 0 || v >= n)
      throw ParseError(line, "vertex id " + std::to_string(v) + " outside [0, " +
                                 std::to_string(n) + ")");
    return v;
  };

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::int32_t i = 0; i < m; ++i) {
    const auto& line = lines[2 + static_cast<std::size_t>(i)];
    detail::expect_tokens(line, 3, "edge line");
    Edge e;
    e.tail = check_vertex(line.tokens[0], line.number);
    e.head = check_vertex(line.tokens[1], line.number);
    e.capacity = detail::parse_real(line.tokens[2], line.number, "capacity");
    if (e.tail == e.head) throw ParseError(line.number, "self-loop edge");
    if (!(e.capacity > 0.0)) throw ParseError(line.number, "capacity must be positive");
    edges.push_back(e);
  }

  std::vector<Commodity> commodities;
  commodities.reserve(static_cast<std::size_t>(k));
  for (std::int32_t i = 0; i < k; ++i) {
    const auto& line = lines[2 + static_cast<std::size_t>(m) + static_cast<std::size_t>(i)];
    detail::expect_tokens(line, 3, "commodity line");
    Commodity c;
    c.origin = check_vertex(line.tokens[0], line.number);
    c.destination = check_vertex(line.tokens[1], line.number);
    if (c.origin == c.destination) throw ParseError(line.number, "origin equals destination");
    const double demand = detail::parse_real(line.tokens[2], line.number, "demand");
    if (demand == -1.0) {
      c.demand = kUnbounded;
    } else if (demand > 0.0) {
      c.demand = demand;
    } else {
      throw ParseError(line.number, "demand must be positive or -1");
    }
    commodities.push_back(c);
  }

  Instance instance;
  instance.network = Network(n, std::move(edges));
  instance.commodities = merge_duplicate_commodities(commodities);
  instance.hop_bound = hop_bound;
  return instance;
}

inline std::string serialize_instance(const Instance& instance,
                                      const std::vector<std::string>& comments = {}) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << '\n';
  const Network& g = instance.network;
  out << "lbmcf1 1\n";
  out << g.vertex_count() << ' ' << g.edge_count() << ' ' << instance.commodity_count() << ' '
      << instance.hop_bound << '\n';
  for (const Edge& e : g.edges()) out << e.tail << ' ' << e.head << ' ' << format_double(e.capacity) << '\n';
  for (const Commodity& c : instance.commodities) {
    out << c.origin << ' ' << c.destination << ' '
        << (c.unbounded() ? std::string("-1") : format_double(c.demand)) << '\n';
  }
  return out.str();
}

inline std::string serialize_solution(const FlowSolution& solution) {
  std::ostringstream out;
  for (const PathFlow& pf : solution.path_flows) {
    out << pf.commodity << ' ' << format_double(pf.amount);
    for (VertexId v : pf.vertices) out << ' ' << v;
    out << '\n';
  }
  out << "total " << format_double(solution.total_value) << '\n';
  return out.str();
}

// Reads a solution document against `instance`. The file stores vertex
// sequences only, so each hop is mapped onto the parallel arcs between its
// endpoints: arcs are filled in index order and a path-flow is split when it
// spans several of them. Any excess lands on the last arc of the group, where
// validation reports it.
inline FlowSolution parse_solution(std::string_view text, const Instance& instance) {
  const Network& g = instance.network;
  const auto lines = detail::tokenize(text);

  // Arc groups keyed by (tail, head), each in increasing edge index order.
  std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> groups;
  for (EdgeId e = 0; e < g.edge_count(); ++e) groups[{g.edge(e).tail, g.edge(e).head}].push_back(e);
  std::vector<double> residual(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) residual[static_cast<std::size_t>(e)] = g.edge(e).capacity;

  FlowSolution solution;
  bool saw_total = false;
  double declared_total = 0.0;
  for (const auto& line : lines) {
    if (saw_total) throw ParseError(line.number, "data after the 'total' trailer");
    if (line.tokens[0] == "total") {
      detail::expect_tokens(line, 2, "trailer");
      declared_total = detail::parse_real(line.tokens[1], line.number, "total");
      saw_total = true;
      continue;
    }
    if (line.tokens.size() < 4)
      throw ParseError(line.number, "path-flow line needs a commodity, an amount and two vertices");
    const auto commodity = detail::parse_int<std::int32_t>(line.tokens[0], line.number, "commodity index");
    if (commodity < 0 || commodity >= instance.commodity_count())
      throw StructuralError("line " + std::to_string(line.number) + ": commodity index " +
                            std::to_string(commodity) + " out of range");
    const double amount = detail::parse_real(line.tokens[1], line.number, "amount");
    std::vector<VertexId> vertices;
    for (std::size_t t = 2; t < line.tokens.size(); ++t) {
      const auto v = detail::parse_int<std::int32_t>(line.tokens[t], line.number, "vertex id");
      if (v < 0 || v >= g.vertex_count())
        throw StructuralError("line " + std::to_string(line.number) + ": vertex " +
                              std::to_string(v) + " out of range");
      vertices.push_back(v);
    }

    // Each piece is (amount, edges chosen so far).
    std::vector<std::pair<double, std::vector<EdgeId>>> pieces{{amount, {}}};
    for (std::size_t h = 0; h + 1 < vertices.size(); ++h) {
      const auto it = groups.find({vertices[h], vertices[h + 1]});
      if (it == groups.end())
        throw StructuralError("line " + std::to_string(line.number) + ": no edge " +
                              std::to_string(vertices[h]) + "->" + std::to_string(vertices[h + 1]));
      const auto& arcs = it->second;
      std::vector<std::pair<double, std::vector<EdgeId>>> next;
      for (auto& [piece_amount, chosen] : pieces) {
        double remaining = piece_amount;
        for (std::size_t a = 0; a < arcs.size() && remaining > 0.0; ++a) {
          double& room = residual[static_cast<std::size_t>(arcs[a])];
          const bool last = a + 1 == arcs.size();
          if (!last && room <= 0.0) continue;
          const double take = (last || remaining <= room) ? remaining : room;
          room -= take;
          remaining -= take;
          auto extended = chosen;
          extended.push_back(arcs[a]);
          next.emplace_back(take, std::move(extended));
        }
        if (piece_amount <= 0.0) {
          auto extended = chosen;
          extended.push_back(arcs.front());
          next.emplace_back(piece_amount, std::move(extended));
        }
      }
      pieces = std::move(next);
    }
    for (auto& [piece_amount, chosen] : pieces) {
      PathFlow pf;
      pf.commodity = commodity;
      pf.vertices = vertices;
      pf.edges = std::move(chosen);
      pf.amount = piece_amount;
      solution.path_flows.push_back(std::move(pf));
    }
  }
  if (!saw_total) throw ParseError(lines.empty() ? 1 : lines.back().number, "missing 'total' trailer");
  solution.recompute_total();
  const double scale = std::max({1.0, std::abs(declared_total), std::abs(solution.total_value)});
  if (std::abs(declared_total - solution.total_value) > 1e-9 * scale)
    throw ParseError(lines.back().number, "declared total " + format_double(declared_total) +
                                              " differs from the sum of amounts " +
                                              format_double(solution.total_value));
  return solution;
}

}  // namespace lbmcf
