#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twreduce/common.hpp"

namespace twr {

/// Undirected weighted edge, internal 0-based endpoints with u < v.
struct GraphEdge {
  int u = 0;
  int v = 0;
  Weight w = 1;

  bool operator==(const GraphEdge&) const = default;
};

/// Immutable undirected graph. Vertices are 1..n externally (PACE
/// convention) and 0..n-1 internally; conversion happens in the parsers.
/// No self-loops; parallel edges collapse to the minimum weight.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<GraphEdge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  std::span<const std::pair<int, Weight>> neighbors(int v) const;
  int degree(int v) const;

  /// Index into edges() for endpoints {u, v}, if that edge exists.
  std::optional<int> find_edge(int u, int v) const;

  /// Re-derives the adjacency index from the edge list and compares.
  bool validate_adjacency() const;

 private:
  int n_ = 0;
  std::vector<GraphEdge> edges_;                  // sorted by (u, v), unique
  std::vector<int> adj_offsets_;                  // CSR over both directions
  std::vector<std::pair<int, Weight>> adj_;
};

struct SteinerInstance {
  Graph graph;
  std::vector<int> terminals;  // internal 0-based ids, sorted, nonempty
};

/// PACE 2017-style `.gr` reader, extended with an optional third weight
/// column. Comment lines start with `c`; the header is `p tw <n> <m>`;
/// then m lines `u v` or `u v w`. Errors name the offending line.
Graph parse_gr(std::string_view text);

/// Canonical `.gr` writer (weights emitted only when not 1).
std::string write_gr(const Graph& g);

/// Whitespace-separated 1-based vertex ids; deduplicated. Errors on an
/// empty set or an id outside 1..n. Returns internal 0-based ids, sorted.
std::vector<int> parse_terminals(std::string_view text, int n);

}  // namespace twr
