#include "twreduce/oracles.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <string>
#include <unordered_map>

namespace twr {

namespace {

[[noreturn]] void over_budget(const std::string& what) {
  throw ContractError("oracle budget exceeded: " + what);
}

// Oracle-side connectivity test: do the blocks of p and q chain every
// position into a single component? Deliberately not lattice_join.
bool oracle_joins_to_top(const Partition& p, const Partition& q) {
  const int t = p.size();
  if (t <= 1) return true;
  std::array<int, kMaxUniverse> comp{};
  for (int i = 0; i < t; ++i) comp[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Partition* part : {&p, &q}) {
      for (int i = 0; i < t; ++i) {
        for (int j = i + 1; j < t; ++j) {
          if (part->digit(i) == part->digit(j) && comp[i] != comp[j]) {
            const int lo = std::min(comp[i], comp[j]);
            const int hi = std::max(comp[i], comp[j]);
            for (int k = 0; k < t; ++k) {
              if (comp[k] == hi) comp[k] = lo;
            }
            changed = true;
          }
        }
      }
    }
  }
  for (int i = 1; i < t; ++i) {
    if (comp[i] != comp[0]) return false;
  }
  return true;
}

// Oracle-side single-cycle test for two perfect matchings.
bool oracle_union_is_cycle(const Partition& p, const Partition& q) {
  const int t = p.size();
  if (t == 0 || t % 2 != 0 || q.size() != t) return false;
  std::array<int, kMaxUniverse> pp{}, qq{};
  for (int i = 0; i < t; ++i) {
    pp[i] = qq[i] = -1;
    for (int j = 0; j < t; ++j) {
      if (j != i && p.digit(j) == p.digit(i)) pp[i] = j;
      if (j != i && q.digit(j) == q.digit(i)) qq[i] = j;
    }
    if (pp[i] < 0 || qq[i] < 0) return false;  // not perfect matchings
  }
  int cur = 0, visited = 0;
  do {
    cur = pp[cur];
    cur = qq[cur];
    visited += 2;
  } while (cur != 0 && visited <= t);
  return cur == 0 && visited == t;
}

void collect_partitions(int t, std::vector<int>& labels,
                        std::vector<Partition>& out) {
  const int i = static_cast<int>(labels.size());
  if (i == t) {
    out.push_back(Partition::from_labels(labels));
    return;
  }
  int mx = -1;
  for (int l : labels) mx = std::max(mx, l);
  for (int l = 0; l <= mx + 1; ++l) {
    labels.push_back(l);
    collect_partitions(t, labels, out);
    labels.pop_back();
  }
}

void collect_matchings(int t, std::vector<int>& labels, std::uint32_t used,
                       int next_block, std::vector<Partition>& out) {
  if (std::popcount(used) == t) {
    out.push_back(Partition::from_labels(labels));
    return;
  }
  int first = 0;
  while (used & (1u << first)) ++first;
  for (int second = first + 1; second < t; ++second) {
    if (used & (1u << second)) continue;
    labels[first] = next_block;
    labels[second] = next_block;
    collect_matchings(t, labels, used | (1u << first) | (1u << second),
                      next_block + 1, out);
  }
}

Weight min_feasible(const std::vector<TableRow>& rows, const Partition& q,
                    bool matchings) {
  Weight best = kInfiniteWeight;
  for (const TableRow& r : rows) {
    const bool ok = matchings ? oracle_union_is_cycle(r.part, q)
                              : oracle_joins_to_top(r.part, q);
    if (ok && r.weight < best) best = r.weight;
  }
  return best;
}

bool representative_impl(const std::vector<TableRow>& input,
                         const std::vector<TableRow>& output,
                         const std::vector<Partition>& completions,
                         bool matchings) {
  for (const Partition& q : completions) {
    if (min_feasible(input, q, matchings) != min_feasible(output, q, matchings)) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool oracle_hamilton(const Graph& g, const OracleBudget& budget) {
  const int n = g.vertex_count();
  if (n > budget.max_vertices) over_budget("oracle_hamilton vertex count");
  if (n < 3) return false;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const GraphEdge& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = true;
  std::vector<int> perm(n - 1);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    bool ok = adj[0][perm.front()] && adj[perm.back()][0];
    for (std::size_t i = 0; ok && i + 1 < perm.size(); ++i) {
      ok = adj[perm[i]][perm[i + 1]];
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::optional<Weight> oracle_tsp(const Graph& g, const OracleBudget& budget) {
  const int n = g.vertex_count();
  if (n > budget.max_held_karp_vertices) over_budget("oracle_tsp vertex count");
  if (n < 3) return std::nullopt;
  std::vector<std::vector<Weight>> dist(n, std::vector<Weight>(n, kInfiniteWeight));
  for (const GraphEdge& e : g.edges()) dist[e.u][e.v] = dist[e.v][e.u] = e.w;
  const std::size_t full = std::size_t{1} << (n - 1);  // subsets of 1..n-1
  std::vector<std::vector<Weight>> dp(full,
                                      std::vector<Weight>(n, kInfiniteWeight));
  for (int v = 1; v < n; ++v) {
    if (dist[0][v] != kInfiniteWeight) dp[std::size_t{1} << (v - 1)][v] = dist[0][v];
  }
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (int last = 1; last < n; ++last) {
      const Weight cur = dp[mask][last];
      if (cur == kInfiniteWeight || !(mask & (std::size_t{1} << (last - 1)))) {
        continue;
      }
      for (int next = 1; next < n; ++next) {
        if (mask & (std::size_t{1} << (next - 1))) continue;
        if (dist[last][next] == kInfiniteWeight) continue;
        const std::size_t m2 = mask | (std::size_t{1} << (next - 1));
        const Weight cand = cur + dist[last][next];
        if (cand < dp[m2][next]) dp[m2][next] = cand;
      }
    }
  }
  Weight best = kInfiniteWeight;
  for (int last = 1; last < n; ++last) {
    if (dp[full - 1][last] == kInfiniteWeight || dist[last][0] == kInfiniteWeight) {
      continue;
    }
    best = std::min(best, dp[full - 1][last] + dist[last][0]);
  }
  if (best == kInfiniteWeight) return std::nullopt;
  return best;
}

std::optional<Weight> oracle_steiner(const SteinerInstance& inst,
                                     const OracleBudget& budget) {
  const Graph& g = inst.graph;
  const int n = g.vertex_count();
  if (n > budget.max_held_karp_vertices) over_budget("oracle_steiner vertex count");
  if (inst.terminals.empty()) throw ContractError("oracle_steiner: no terminals");
  const int k = static_cast<int>(inst.terminals.size());
  if (k > 12) over_budget("oracle_steiner terminal count");
  if (k == 1) return 0;
  // all-pairs shortest paths
  std::vector<std::vector<Weight>> dist(n, std::vector<Weight>(n, kInfiniteWeight));
  for (int v = 0; v < n; ++v) dist[v][v] = 0;
  for (const GraphEdge& e : g.edges()) {
    dist[e.u][e.v] = std::min(dist[e.u][e.v], e.w);
    dist[e.v][e.u] = std::min(dist[e.v][e.u], e.w);
  }
  for (int m = 0; m < n; ++m) {
    for (int a = 0; a < n; ++a) {
      if (dist[a][m] == kInfiniteWeight) continue;
      for (int b = 0; b < n; ++b) {
        if (dist[m][b] == kInfiniteWeight) continue;
        const Weight cand = dist[a][m] + dist[m][b];
        if (cand < dist[a][b]) dist[a][b] = cand;
      }
    }
  }
  // Dreyfus-Wagner: dp[S][v] = min weight of a tree spanning S u {v}
  const std::size_t full = std::size_t{1} << k;
  std::vector<std::vector<Weight>> dp(full, std::vector<Weight>(n, kInfiniteWeight));
  for (int ti = 0; ti < k; ++ti) {
    for (int v = 0; v < n; ++v) {
      dp[std::size_t{1} << ti][v] = dist[inst.terminals[ti]][v];
    }
  }
  for (std::size_t s = 1; s < full; ++s) {
    if (std::popcount(s) < 2) continue;
    auto& row = dp[s];
    for (int v = 0; v < n; ++v) {
      // split the terminal set at v
      for (std::size_t sub = (s - 1) & s; sub != 0; sub = (sub - 1) & s) {
        const Weight a = dp[sub][v];
        const Weight b = dp[s ^ sub][v];
        if (a == kInfiniteWeight || b == kInfiniteWeight) continue;
        if (a + b < row[v]) row[v] = a + b;
      }
    }
    // relax through the metric closure
    for (int v = 0; v < n; ++v) {
      for (int u = 0; u < n; ++u) {
        if (row[u] == kInfiniteWeight || dist[u][v] == kInfiniteWeight) continue;
        const Weight cand = row[u] + dist[u][v];
        if (cand < row[v]) row[v] = cand;
      }
    }
  }
  const Weight best = dp[full - 1][inst.terminals[0]];
  if (best == kInfiniteWeight) return std::nullopt;
  return best;
}

std::optional<Weight> oracle_steiner_exhaustive(const SteinerInstance& inst,
                                                const OracleBudget& budget) {
  const Graph& g = inst.graph;
  const int n = g.vertex_count();
  const int m = g.edge_count();
  if (n > budget.max_vertices) over_budget("oracle_steiner_exhaustive vertices");
  if (m > 20) over_budget("oracle_steiner_exhaustive edges");
  if (inst.terminals.empty()) throw ContractError("oracle: no terminals");
  if (inst.terminals.size() == 1) return 0;
  Weight best = kInfiniteWeight;
  for (std::uint32_t sub = 0; sub < (1u << m); ++sub) {
    // connectivity of the terminal set within the chosen edges
    std::array<int, 32> comp{};
    for (int v = 0; v < n; ++v) comp[v] = v;
    auto find = [&](int x) {
      while (comp[x] != x) {
        comp[x] = comp[comp[x]];
        x = comp[x];
      }
      return x;
    };
    Weight total = 0;
    for (int e = 0; e < m; ++e) {
      if (!(sub & (1u << e))) continue;
      total += g.edges()[e].w;
      const int a = find(g.edges()[e].u);
      const int b = find(g.edges()[e].v);
      if (a != b) comp[std::max(a, b)] = std::min(a, b);
    }
    if (total >= best) continue;
    bool connected = true;
    const int root = find(inst.terminals[0]);
    for (int t : inst.terminals) connected = connected && find(t) == root;
    if (connected) best = total;
  }
  if (best == kInfiniteWeight) return std::nullopt;
  return best;
}

std::uint64_t bell(int t) {
  if (t < 0 || t > 25) throw ContractError("bell: t outside exact 64-bit range");
  // Bell triangle: row starts with the previous row's last entry
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= t; ++i) {
    std::vector<std::uint64_t> next;
    next.reserve(i + 1);
    next.push_back(row.back());
    for (std::uint64_t x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

std::vector<Partition> oracle_all_partitions(int t, const OracleBudget& budget) {
  if (t < 0 || t > budget.max_universe) over_budget("partition universe");
  std::vector<Partition> out;
  std::vector<int> labels;
  labels.reserve(t);
  collect_partitions(t, labels, out);
  return out;
}

std::vector<Partition> oracle_all_matchings(int t, const OracleBudget& budget) {
  if (t < 0 || t % 2 != 0 || t > budget.max_matchings_universe) {
    over_budget("matchings universe");
  }
  std::vector<Partition> out;
  if (t == 0) {
    out.push_back(Partition{});
    return out;
  }
  std::vector<int> labels(t, 0);
  collect_matchings(t, labels, 0, 0, out);
  return out;
}

bool oracle_representative(const std::vector<TableRow>& input,
                           const std::vector<TableRow>& output, int t,
                           const OracleBudget& budget) {
  return representative_impl(input, output, oracle_all_partitions(t, budget),
                             /*matchings=*/false);
}

bool oracle_representative_matchings(const std::vector<TableRow>& input,
                                     const std::vector<TableRow>& output, int t,
                                     const OracleBudget& budget) {
  return representative_impl(input, output, oracle_all_matchings(t, budget),
                             /*matchings=*/true);
}

int oracle_matchings_matrix_rank(int t, const OracleBudget& budget) {
  const auto matchings = oracle_all_matchings(t, budget);
  const std::size_t n = matchings.size();
  std::vector<std::vector<bool>> rows(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rows[i][j] = oracle_union_is_cycle(matchings[i], matchings[j]);
    }
  }
  int rank = 0;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < n && lead < n; ++col) {
    std::size_t pivot = lead;
    while (pivot < n && !rows[pivot][col]) ++pivot;
    if (pivot == n) continue;
    std::swap(rows[pivot], rows[lead]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != lead && rows[r][col]) {
        for (std::size_t c = 0; c < n; ++c) {
          rows[r][c] = rows[r][c] != rows[lead][c];
        }
      }
    }
    ++lead;
    ++rank;
  }
  return rank;
}

FitsOracle FitsOracle::partitions(int t, const OracleBudget& budget) {
  FitsOracle o;
  o.all_ = oracle_all_partitions(t, budget);
  const std::size_t n = o.all_.size();
  o.bits_.assign(n * n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const bool f = oracle_joins_to_top(o.all_[i], o.all_[j]);
      o.bits_[i * n + j] = f;
      o.bits_[j * n + i] = f;
    }
  }
  return o;
}

FitsOracle FitsOracle::matchings(int t, const OracleBudget& budget) {
  FitsOracle o;
  o.all_ = oracle_all_matchings(t, budget);
  const std::size_t n = o.all_.size();
  o.bits_.assign(n * n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const bool f = oracle_union_is_cycle(o.all_[i], o.all_[j]);
      o.bits_[i * n + j] = f;
      o.bits_[j * n + i] = f;
    }
  }
  return o;
}

int FitsOracle::index_of(const Partition& p) const {
  for (std::size_t i = 0; i < all_.size(); ++i) {
    if (all_[i] == p) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace twr
