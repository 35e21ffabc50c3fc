#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "twreduce/graph.hpp"

namespace twr {

/// Tree decomposition: one bag of vertices per node plus tree edges over
/// node ids. Bags hold internal 0-based vertex ids, sorted.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> tree_edges;
  int declared_width = -1;  // from the .td header; -1 when constructed

  int width() const;
};

/// Raised by the decomposition validator; the message names the violated
/// invariant and a witness vertex or edge.
class ValidationError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// PACE `.td` reader: header `s td <#bags> <width+1> <n>`, bag lines
/// `b <id> <v...>`, then tree edges. Structural errors only; semantic
/// validation is validate_decomposition.
TreeDecomposition parse_td(std::string_view text, int n_vertices = -1);

std::string write_td(const TreeDecomposition& td, int n_vertices);

/// Checks the four decomposition invariants against a graph: every vertex
/// covered, every edge covered, per-vertex connectivity, declared width.
/// Also checks that the node graph is a tree. Throws ValidationError.
void validate_decomposition(const TreeDecomposition& td, const Graph& g);

enum class DecomposeStrategy { MinDegree, MinFill };

/// Elimination-ordering heuristic (greedy min-degree or min-fill, ties by
/// lowest vertex id). Always returns a decomposition that passes the
/// validator; width is heuristic.
TreeDecomposition heuristic_decompose(const Graph& g, DecomposeStrategy strategy);

}  // namespace twr
