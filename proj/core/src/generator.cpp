#include "twreduce/generator.hpp"

#include <algorithm>
#include <set>

namespace twr {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw ContractError("Rng::below(0)");
  // rejection sampling keeps the distribution exactly uniform
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % n;
}

std::uint64_t Rng::range(std::uint64_t lo, std::uint64_t hi) {
  return lo + below(hi - lo + 1);
}

bool Rng::chance(std::uint64_t numerator, std::uint64_t denominator) {
  return below(denominator) < numerator;
}

GeneratedInstance random_partial_ktree(int n, int k, int keep_permille,
                                       Weight max_weight, std::uint64_t seed) {
  if (k < 1 || n < k + 1) {
    throw ContractError("random_partial_ktree: need n >= k+1 >= 2");
  }
  if (max_weight < 1) throw ContractError("random_partial_ktree: max_weight < 1");
  Rng rng(seed);
  std::vector<GraphEdge> edges;
  TreeDecomposition td;
  // base clique on vertices 0..k
  std::vector<int> base(k + 1);
  for (int i = 0; i <= k; ++i) base[i] = i;
  td.bags.push_back(base);
  // cliques[i] = a k-clique present in the k-tree, with its origin bag
  struct Clique {
    std::vector<int> verts;
    int bag;
  };
  std::vector<Clique> cliques;
  for (int drop = 0; drop <= k; ++drop) {
    std::vector<int> c;
    for (int i = 0; i <= k; ++i) {
      if (i != drop) c.push_back(i);
    }
    cliques.push_back({std::move(c), 0});
  }
  auto add_clique_edges = [&](const std::vector<int>& verts, int newcomer) {
    for (int v : verts) {
      edges.push_back({std::min(v, newcomer), std::max(v, newcomer),
                       static_cast<Weight>(rng.range(1, max_weight))});
    }
  };
  for (int i = 0; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      edges.push_back({i, j, static_cast<Weight>(rng.range(1, max_weight))});
    }
  }
  for (int v = k + 1; v < n; ++v) {
    const Clique host = cliques[rng.below(cliques.size())];  // copy: the
    // vector may reallocate while new cliques are appended below
    std::vector<int> bag = host.verts;
    add_clique_edges(bag, v);
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(bag);
    const int bag_id = static_cast<int>(td.bags.size()) - 1;
    td.tree_edges.push_back({host.bag, bag_id});
    // new k-cliques: swap each host member for v
    for (std::size_t drop = 0; drop < host.verts.size(); ++drop) {
      std::vector<int> c;
      for (std::size_t idx = 0; idx < host.verts.size(); ++idx) {
        if (idx != drop) c.push_back(host.verts[idx]);
      }
      c.push_back(v);
      std::sort(c.begin(), c.end());
      cliques.push_back({std::move(c), bag_id});
    }
  }
  // drop non-skeleton edges at random; a spanning skeleton stays so the
  // instance remains connected
  std::vector<bool> skeleton(edges.size(), false);
  {
    std::vector<int> comp(n);
    for (int i = 0; i < n; ++i) comp[i] = i;
    auto find = [&](int x) {
      while (comp[x] != x) {
        comp[x] = comp[comp[x]];
        x = comp[x];
      }
      return x;
    };
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const int a = find(edges[e].u), b = find(edges[e].v);
      if (a != b) {
        comp[std::max(a, b)] = std::min(a, b);
        skeleton[e] = true;
      }
    }
  }
  std::vector<GraphEdge> kept;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (skeleton[e] || rng.chance(static_cast<std::uint64_t>(keep_permille), 1000)) {
      kept.push_back(edges[e]);
    }
  }
  GeneratedInstance out{Graph(n, std::move(kept)), std::move(td)};
  out.td.declared_width = out.td.width();
  validate_decomposition(out.td, out.graph);
  return out;
}

GeneratedInstance cycle_instance(int n) {
  if (n < 3) throw ContractError("cycle_instance: need n >= 3");
  std::vector<GraphEdge> edges;
  edges.reserve(n);
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1});
  edges.push_back({0, n - 1, 1});
  TreeDecomposition td;
  td.bags.reserve(n - 2);
  for (int i = 1; i + 1 < n; ++i) td.bags.push_back({0, i, i + 1});
  for (int b = 0; b + 1 < static_cast<int>(td.bags.size()); ++b) {
    td.tree_edges.push_back({b, b + 1});
  }
  td.declared_width = td.width();
  return {Graph(n, std::move(edges)), std::move(td)};
}

Graph random_graph(int n, int m, Weight max_weight, std::uint64_t seed) {
  const std::int64_t max_edges =
      static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (m < 0 || m > max_edges) throw ContractError("random_graph: bad edge count");
  if (max_weight < 1) throw ContractError("random_graph: max_weight < 1");
  Rng rng(seed);
  std::set<std::pair<int, int>> chosen;
  while (static_cast<int>(chosen.size()) < m) {
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (u == v) continue;
    chosen.insert({std::min(u, v), std::max(u, v)});
  }
  std::vector<GraphEdge> edges;
  edges.reserve(chosen.size());
  for (const auto& [u, v] : chosen) {
    edges.push_back({u, v, static_cast<Weight>(rng.range(1, max_weight))});
  }
  return Graph(n, std::move(edges));
}

}  // namespace twr
