#include "twreduce/steiner.hpp"

#include <algorithm>
#include <bit>
#include <chrono>

namespace twr {

namespace {

using Clock = std::chrono::steady_clock;

int position_in_bag(const std::vector<int>& bag, int v) {
  const auto it = std::lower_bound(bag.begin(), bag.end(), v);
  if (it == bag.end() || *it != v) {
    throw ContractError("steiner: vertex missing from bag");
  }
  return static_cast<int>(it - bag.begin());
}

Label low_bits(int k) { return (Label{1} << k) - 1; }

// insert a 0 bit at position bp
Label shift_up(Label s, int bp) {
  return ((s >> bp) << (bp + 1)) | (s & low_bits(bp));
}

// drop the bit at position bp
Label shift_down(Label s, int bp) {
  return ((s >> (bp + 1)) << bp) | (s & low_bits(bp));
}

int rank_in(Label s, int bp) {
  return std::popcount(s & low_bits(bp));
}

constexpr std::uint64_t kRowBytesEstimate = 80;

}  // namespace

SolveResult solve_steiner(const SteinerInstance& inst, const NiceDecomposition& nd,
                          const ReducePolicy& policy, const SolveLimits& limits) {
  const auto start = Clock::now();
  const Graph& g = inst.graph;
  const int n = g.vertex_count();
  if (inst.terminals.empty()) throw ContractError("steiner: no terminals");
  for (int t : inst.terminals) {
    if (t < 0 || t >= n) throw ContractError("steiner: terminal out of range");
  }
  SolveResult result;
  RunStats& stats = result.stats;
  stats.nodes = nd.nodes().size();
  stats.width = static_cast<std::uint64_t>(std::max(nd.width(), 0));
  if (nd.nodes().back().seen_vertices != n) {
    throw ContractError("steiner: decomposition does not match the graph");
  }
  if (inst.terminals.size() == 1) {
    // one terminal needs no edges
    result.weight = 0;
    stats.wall_nanos = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
            .count());
    return result;
  }

  std::vector<bool> is_terminal(n, false);
  for (int t : inst.terminals) is_terminal[t] = true;
  const std::vector<int> terminals_seen = nd.subtree_counts(is_terminal);
  const int all_terminals = static_cast<int>(inst.terminals.size());

  std::optional<Weight> best;
  auto offer_completion = [&](Weight w) {
    if (!best || w < *best) best = w;
  };

  const auto& nodes = nd.nodes();
  std::vector<std::optional<WeightedTable>> tables(nodes.size());
  std::uint64_t alive_rows = 0;
  const auto universe_of = [](Label s) { return std::popcount(s); };

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (limits.timeout_ms > 0) {
      const auto elapsed =
          std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
      if (static_cast<std::uint64_t>(elapsed.count()) > limits.timeout_ms) {
        throw TimeoutError("steiner: time budget exhausted");
      }
    }
    const NiceNode& node = nodes[i];
    WeightedTable table;
    switch (node.kind) {
      case NodeKind::Leaf: {
        table.upsert_min(0, Partition{}, 0);
        break;
      }
      case NodeKind::IntroduceVertex: {
        const WeightedTable& child = *tables[node.child0];
        const int bp = position_in_bag(node.bag, node.vertex);
        const Label bit = Label{1} << bp;
        WeightedTable chosen = tbl_insert(child, [&](Label s) {
          const Label s2 = shift_up(s, bp) | bit;
          return InsertSpec{s2, rank_in(s2, bp)};
        });
        if (is_terminal[node.vertex]) {
          table = std::move(chosen);
        } else {
          table = tbl_insert(child, [&](Label s) {
            return InsertSpec{shift_up(s, bp), -1};
          });
          table = tbl_union(table, chosen);
        }
        break;
      }
      case NodeKind::IntroduceEdge: {
        const WeightedTable& child = *tables[node.child0];
        const int bu = position_in_bag(node.bag, node.edge_u);
        const int bv = position_in_bag(node.bag, node.edge_v);
        const Label mask = (Label{1} << bu) | (Label{1} << bv);
        WeightedTable bought = tbl_glue(
            child,
            [&](Label s) -> std::optional<std::pair<int, int>> {
              if ((s & mask) != mask) return std::nullopt;
              return std::make_pair(rank_in(s, bu), rank_in(s, bv));
            },
            node.edge_weight);
        table = tbl_union(child, bought);
        break;
      }
      case NodeKind::ForgetVertex: {
        const WeightedTable& child = *tables[node.child0];
        const int bp = position_in_bag(nodes[node.child0].bag, node.vertex);
        const Label bit = Label{1} << bp;
        const bool complete_ok = terminals_seen[i] == all_terminals;
        table = tbl_project(
            child,
            [&](Label s) {
              if ((s & bit) == 0) {
                return ProjectSpec{shift_down(s, bp), std::nullopt, false};
              }
              return ProjectSpec{shift_down(s & ~bit, bp), rank_in(s, bp), true};
            },
            [&](Label, const Partition& p, Weight w) {
              // the dying block is the whole partial tree: a candidate answer
              // once every terminal is below this node
              if (complete_ok && p.block_count() == 1) offer_completion(w);
            });
        break;
      }
      case NodeKind::Join: {
        table = tbl_join(*tables[node.child0], *tables[node.child1]);
        break;
      }
    }
    // release consumed children before accounting for the new table
    for (int c : {node.child0, node.child1}) {
      if (c >= 0) {
        alive_rows -= tables[c]->total_rows();
        tables[c].reset();
      }
    }

    apply_reduce_policy(table, policy, nd.width(), /*matchings=*/false,
                        universe_of, stats);
    if (limits.node_observer) limits.node_observer(i, table);

    const std::uint64_t rows = table.total_rows();
    stats.max_node_rows = std::max(stats.max_node_rows, rows);
    alive_rows += rows;
    stats.max_live_rows = std::max(stats.max_live_rows, alive_rows);
    tables[i] = std::move(table);
  }

  result.weight = best;
  stats.peak_memory_bytes_estimate = stats.max_live_rows * kRowBytesEstimate;
  stats.wall_nanos = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
          .count());
  return result;
}

}  // namespace twr
