#pragma once

#include <cstdint>
#include <vector>

#include "twreduce/decomposition.hpp"
#include "twreduce/graph.hpp"

namespace twr {

enum class NodeKind : std::uint8_t {
  Leaf,
  IntroduceVertex,
  IntroduceEdge,
  ForgetVertex,
  Join,
};

struct NiceNode {
  NodeKind kind = NodeKind::Leaf;
  int child0 = -1;
  int child1 = -1;           // joins only
  int vertex = -1;           // introduce/forget
  int edge_u = -1;           // introduce-edge
  int edge_v = -1;
  Weight edge_weight = 0;
  std::vector<int> bag;      // sorted vertex ids
  int seen_vertices = 0;     // distinct vertices introduced in the subtree
};

/// Rooted binary nice decomposition. Nodes are stored in post order
/// (children precede parents), so the DP engines evaluate them with a single
/// forward scan; the last node is the root and has an empty bag. Each graph
/// edge is introduced at exactly one IntroduceEdge node, directly above the
/// IntroduceVertex of its later-introduced endpoint.
class NiceDecomposition {
 public:
  const std::vector<NiceNode>& nodes() const { return nodes_; }
  int root() const { return static_cast<int>(nodes_.size()) - 1; }
  int width() const { return width_; }

  /// Per-node count of distinct marked vertices introduced in the subtree.
  /// `marked` is indexed by vertex id.
  std::vector<int> subtree_counts(const std::vector<bool>& marked) const;

  /// Re-checks all structural invariants against the graph; throws
  /// ContractError naming the first violation. Test support.
  void check_invariants(const Graph& g) const;

  /// Flattens back to a plain decomposition (for validator cross-checks).
  TreeDecomposition flatten() const;

 private:
  friend NiceDecomposition nicify(const TreeDecomposition&, const Graph&);
  std::vector<NiceNode> nodes_;
  int width_ = -1;
};

/// Converts a validated decomposition to nice form. Node count is
/// O(width * #bags + #edges).
NiceDecomposition nicify(const TreeDecomposition& td, const Graph& g);

}  // namespace twr
