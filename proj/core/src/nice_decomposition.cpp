#include "twreduce/nice_decomposition.hpp"

#include <algorithm>
#include <string>

#include "twreduce/partition.hpp"

namespace twr {

namespace {

std::vector<int> sorted_minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

// Incremental builder around the growing node vector.
class Builder {
 public:
  Builder(const Graph& g) : g_(g), edge_placed_(g.edge_count(), false) {}

  std::vector<NiceNode> take() { return std::move(nodes_); }

  int add_leaf() {
    NiceNode n;
    n.kind = NodeKind::Leaf;
    n.seen_vertices = 0;
    return push(std::move(n));
  }

  int add_introduce(int below, int v) {
    NiceNode n;
    n.kind = NodeKind::IntroduceVertex;
    n.child0 = below;
    n.vertex = v;
    n.bag = nodes_[below].bag;
    n.bag.insert(std::lower_bound(n.bag.begin(), n.bag.end(), v), v);
    n.seen_vertices = nodes_[below].seen_vertices + 1;
    int top = push(std::move(n));
    // place every not-yet-introduced bag edge of v directly above
    for (int x : nodes_[top].bag) {
      if (x == v) continue;
      const auto idx = g_.find_edge(v, x);
      if (idx && !edge_placed_[*idx]) {
        edge_placed_[*idx] = true;
        top = add_introduce_edge(top, *idx);
      }
    }
    return top;
  }

  int add_introduce_edge(int below, int edge_index) {
    const GraphEdge& e = g_.edges()[edge_index];
    NiceNode n;
    n.kind = NodeKind::IntroduceEdge;
    n.child0 = below;
    n.edge_u = e.u;
    n.edge_v = e.v;
    n.edge_weight = e.w;
    n.bag = nodes_[below].bag;
    n.seen_vertices = nodes_[below].seen_vertices;
    return push(std::move(n));
  }

  int add_forget(int below, int v) {
    NiceNode n;
    n.kind = NodeKind::ForgetVertex;
    n.child0 = below;
    n.vertex = v;
    n.bag = nodes_[below].bag;
    n.bag.erase(std::find(n.bag.begin(), n.bag.end(), v));
    n.seen_vertices = nodes_[below].seen_vertices;
    return push(std::move(n));
  }

  int add_join(int left, int right) {
    NiceNode n;
    n.kind = NodeKind::Join;
    n.child0 = left;
    n.child1 = right;
    n.bag = nodes_[left].bag;
    // distinct vertices seen in both subtrees are exactly the bag
    n.seen_vertices = nodes_[left].seen_vertices + nodes_[right].seen_vertices -
                      static_cast<int>(n.bag.size());
    return push(std::move(n));
  }

  /// Chain from an existing top with bag `from` to bag `to`: forgets first,
  /// then introduces, both in ascending vertex order.
  int transition(int top, const std::vector<int>& to) {
    for (int v : sorted_minus(nodes_[top].bag, to)) top = add_forget(top, v);
    for (int v : sorted_minus(to, nodes_[top].bag)) top = add_introduce(top, v);
    return top;
  }

  bool all_edges_placed() const {
    return std::find(edge_placed_.begin(), edge_placed_.end(), false) ==
           edge_placed_.end();
  }

 private:
  int push(NiceNode n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  const Graph& g_;
  std::vector<NiceNode> nodes_;
  std::vector<bool> edge_placed_;
};

}  // namespace

NiceDecomposition nicify(const TreeDecomposition& td, const Graph& g) {
  validate_decomposition(td, g);
  if (td.width() + 1 > kMaxUniverse) {
    throw ParseError("decomposition width " + std::to_string(td.width()) +
                     " exceeds the supported maximum of " +
                     std::to_string(kMaxUniverse - 1));
  }
  NiceDecomposition nd;
  Builder builder(g);
  const int nb = static_cast<int>(td.bags.size());
  if (nb == 0) {
    builder.add_leaf();
    nd.nodes_ = builder.take();
    nd.width_ = td.width();
    return nd;
  }
  std::vector<std::vector<int>> children(nb);
  std::vector<int> parent(nb, -1);
  {
    std::vector<std::vector<int>> adj(nb);
    for (const auto& [a, b] : td.tree_edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    std::vector<int> order{0};
    parent[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int u = order[i];
      for (int v : adj[u]) {
        if (parent[v] < 0) {
          parent[v] = u;
          children[u].push_back(v);
          order.push_back(v);
        }
      }
    }
  }
  // iterative post-order: build each td node's nice subtree top
  std::vector<int> top_of(nb, -1);
  struct Frame {
    int node;
    std::size_t next_child = 0;
  };
  std::vector<Frame> stack{{0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const int u = f.node;
    if (f.next_child < children[u].size()) {
      stack.push_back({children[u][f.next_child++]});
      continue;
    }
    const auto& bag = td.bags[u];
    int top;
    if (children[u].empty()) {
      top = builder.transition(builder.add_leaf(), bag);
    } else {
      top = builder.transition(top_of[children[u][0]], bag);
      for (std::size_t k = 1; k < children[u].size(); ++k) {
        const int rhs = builder.transition(top_of[children[u][k]], bag);
        top = builder.add_join(top, rhs);
      }
    }
    top_of[u] = top;
    stack.pop_back();
  }
  // forget everything above the root bag so the answer sits in one entry
  builder.transition(top_of[0], {});
  if (!builder.all_edges_placed()) {
    throw ContractError("nicify: some graph edge was never introduced");
  }
  nd.nodes_ = builder.take();
  nd.width_ = td.width();
  return nd;
}

std::vector<int> NiceDecomposition::subtree_counts(
    const std::vector<bool>& marked) const {
  std::vector<int> out(nodes_.size(), 0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const NiceNode& n = nodes_[i];
    switch (n.kind) {
      case NodeKind::Leaf:
        out[i] = 0;
        break;
      case NodeKind::IntroduceVertex:
        out[i] = out[n.child0] + (marked[n.vertex] ? 1 : 0);
        break;
      case NodeKind::IntroduceEdge:
      case NodeKind::ForgetVertex:
        out[i] = out[n.child0];
        break;
      case NodeKind::Join: {
        int in_bag = 0;
        for (int v : n.bag) in_bag += marked[v] ? 1 : 0;
        out[i] = out[n.child0] + out[n.child1] - in_bag;
        break;
      }
    }
  }
  return out;
}

TreeDecomposition NiceDecomposition::flatten() const {
  TreeDecomposition td;
  td.bags.reserve(nodes_.size());
  for (const NiceNode& n : nodes_) td.bags.push_back(n.bag);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].child0 >= 0) td.tree_edges.push_back({nodes_[i].child0, static_cast<int>(i)});
    if (nodes_[i].child1 >= 0) td.tree_edges.push_back({nodes_[i].child1, static_cast<int>(i)});
  }
  td.declared_width = td.width();
  return td;
}

void NiceDecomposition::check_invariants(const Graph& g) const {
  auto fail = [](const std::string& what) { throw ContractError("nice decomposition: " + what); };
  if (nodes_.empty()) fail("no nodes");
  if (!nodes_.back().bag.empty()) fail("root bag not empty");
  std::vector<int> edge_intro_count(g.edge_count(), 0);
  std::vector<bool> used_as_child(nodes_.size(), false);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const NiceNode& n = nodes_[i];
    if (!std::is_sorted(n.bag.begin(), n.bag.end())) fail("bag not sorted");
    if (static_cast<int>(n.bag.size()) > width_ + 1) fail("bag exceeds width");
    if (n.child0 >= static_cast<int>(i) || n.child1 >= static_cast<int>(i)) {
      fail("children must precede parents");
    }
    for (int c : {n.child0, n.child1}) {
      if (c >= 0) {
        if (used_as_child[c]) fail("node used as child twice");
        used_as_child[c] = true;
      }
    }
    auto bag_contains = [&](int v) {
      return std::binary_search(n.bag.begin(), n.bag.end(), v);
    };
    switch (n.kind) {
      case NodeKind::Leaf:
        if (!n.bag.empty()) fail("leaf bag not empty");
        if (n.child0 >= 0) fail("leaf with child");
        break;
      case NodeKind::IntroduceVertex: {
        if (n.child0 < 0) fail("introduce without child");
        if (!bag_contains(n.vertex)) fail("introduced vertex missing from bag");
        auto expect = nodes_[n.child0].bag;
        expect.insert(std::lower_bound(expect.begin(), expect.end(), n.vertex),
                      n.vertex);
        if (expect != n.bag) fail("introduce bag mismatch");
        break;
      }
      case NodeKind::IntroduceEdge: {
        if (n.child0 < 0) fail("introduce-edge without child");
        if (n.bag != nodes_[n.child0].bag) fail("introduce-edge changed bag");
        if (!bag_contains(n.edge_u) || !bag_contains(n.edge_v)) {
          fail("introduced edge endpoints not in bag");
        }
        const auto idx = g.find_edge(n.edge_u, n.edge_v);
        if (!idx) fail("introduced edge not in graph");
        ++edge_intro_count[*idx];
        // placement rule: the chain below, skipping sibling edge nodes,
        // starts at the IntroduceVertex of one endpoint
        int below = n.child0;
        while (nodes_[below].kind == NodeKind::IntroduceEdge) {
          below = nodes_[below].child0;
        }
        if (nodes_[below].kind != NodeKind::IntroduceVertex ||
            (nodes_[below].vertex != n.edge_u && nodes_[below].vertex != n.edge_v)) {
          fail("introduce-edge not directly above its endpoint's introduce");
        }
        break;
      }
      case NodeKind::ForgetVertex: {
        if (n.child0 < 0) fail("forget without child");
        if (bag_contains(n.vertex)) fail("forgotten vertex still in bag");
        auto expect = n.bag;
        expect.insert(std::lower_bound(expect.begin(), expect.end(), n.vertex),
                      n.vertex);
        if (expect != nodes_[n.child0].bag) fail("forget bag mismatch");
        break;
      }
      case NodeKind::Join:
        if (n.child0 < 0 || n.child1 < 0) fail("join without two children");
        if (nodes_[n.child0].bag != n.bag || nodes_[n.child1].bag != n.bag) {
          fail("join children bags differ");
        }
        break;
    }
  }
  for (int c : edge_intro_count) {
    if (c != 1) fail("graph edge introduced " + std::to_string(c) + " times");
  }
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    if (!used_as_child[i]) fail("orphan node");
  }
  // width must be preserved exactly
  int max_bag = 0;
  for (const NiceNode& n : nodes_) {
    max_bag = std::max(max_bag, static_cast<int>(n.bag.size()));
  }
  if (max_bag - 1 != width_) fail("width changed by nicification");
}

}  // namespace twr
