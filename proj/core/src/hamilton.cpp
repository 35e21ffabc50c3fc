#include "twreduce/hamilton.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>

namespace twr {

namespace {

using Clock = std::chrono::steady_clock;

// Degree labels: two bits per bag position.
int deg_at(Label l, int pos) { return static_cast<int>((l >> (2 * pos)) & 3); }

Label with_deg(Label l, int pos, int d) {
  return (l & ~(Label{3} << (2 * pos))) | (Label{static_cast<unsigned>(d)} << (2 * pos));
}

Label deg_insert(Label l, int pos) {
  const Label low = l & ((Label{1} << (2 * pos)) - 1);
  return ((l >> (2 * pos)) << (2 * (pos + 1))) | low;
}

Label deg_remove(Label l, int pos) {
  const Label low = l & ((Label{1} << (2 * pos)) - 1);
  return ((l >> (2 * (pos + 1))) << (2 * pos)) | low;
}

int position_in_bag(const std::vector<int>& bag, int v) {
  const auto it = std::lower_bound(bag.begin(), bag.end(), v);
  if (it == bag.end() || *it != v) {
    throw ContractError("hamilton: vertex missing from bag");
  }
  return static_cast<int>(it - bag.begin());
}

constexpr int kNone = -1;

// Open-path endpoint pairing as a partner array over bag positions.
struct Pairing {
  std::array<std::int8_t, kMaxUniverse> partner;

  Pairing() { partner.fill(kNone); }
};

Pairing expand(Label l, const Partition& p, int bag_size) {
  Pairing out;
  std::array<int, kMaxUniverse> d1pos{};
  int t = 0;
  for (int pos = 0; pos < bag_size; ++pos) {
    if (deg_at(l, pos) == 1) d1pos[t++] = pos;
  }
  if (t != p.size()) throw ContractError("hamilton: matching universe mismatch");
  for (int r = 0; r < t; ++r) {
    const std::uint32_t others = p.block_mask(r) & ~(1u << r);
    if (std::popcount(others) != 1) {
      throw ContractError("hamilton: table partition is not a matching");
    }
    out.partner[d1pos[r]] =
        static_cast<std::int8_t>(d1pos[std::countr_zero(others)]);
  }
  return out;
}

Partition compress(Label l, const Pairing& pairing, int bag_size) {
  std::array<int, kMaxUniverse> rank_of{};
  std::array<int, kMaxUniverse> raw{};
  int t = 0;
  for (int pos = 0; pos < bag_size; ++pos) {
    if (deg_at(l, pos) == 1) rank_of[pos] = t++;
  }
  int r = 0;
  for (int pos = 0; pos < bag_size; ++pos) {
    if (deg_at(l, pos) != 1) continue;
    const int mate = pairing.partner[pos];
    raw[r++] = std::min(rank_of[pos], rank_of[mate]);
  }
  return Partition::from_labels(std::span<const int>(raw.data(), t));
}

constexpr std::uint64_t kRowBytesEstimate = 80;

}  // namespace

SolveResult solve_hamilton(const Graph& g, const NiceDecomposition& nd,
                           HamiltonMode mode, const ReducePolicy& policy,
                           const SolveLimits& limits) {
  (void)mode;  // decision and tsp share the weighted DP; callers differ in output
  const auto start = Clock::now();
  const int n = g.vertex_count();
  SolveResult result;
  RunStats& stats = result.stats;
  stats.nodes = nd.nodes().size();
  stats.width = static_cast<std::uint64_t>(std::max(nd.width(), 0));
  auto finish = [&]() {
    stats.peak_memory_bytes_estimate = stats.max_live_rows * kRowBytesEstimate;
    stats.wall_nanos = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
            .count());
  };
  if (n < 3) {
    finish();
    return result;  // no cycle on fewer than three vertices
  }
  if (nd.nodes().back().seen_vertices != n) {
    throw ContractError("hamilton: decomposition does not match the graph");
  }

  std::optional<Weight> best;
  auto offer_completion = [&](Weight w) {
    if (!best || w < *best) best = w;
  };

  const auto& nodes = nd.nodes();
  std::vector<std::optional<WeightedTable>> tables(nodes.size());
  std::uint64_t alive_rows = 0;
  const auto universe_of = [](Label l) {
    int t = 0;
    for (Label rest = l; rest != 0; rest >>= 2) t += (rest & 3) == 1 ? 1 : 0;
    return t;
  };

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (limits.timeout_ms > 0) {
      const auto elapsed =
          std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
      if (static_cast<std::uint64_t>(elapsed.count()) > limits.timeout_ms) {
        throw TimeoutError("hamilton: time budget exhausted");
      }
    }
    const NiceNode& node = nodes[i];
    const int bag_size = static_cast<int>(node.bag.size());
    WeightedTable table;
    switch (node.kind) {
      case NodeKind::Leaf: {
        table.upsert_min(0, Partition{}, 0);
        break;
      }
      case NodeKind::IntroduceVertex: {
        const WeightedTable& child = *tables[node.child0];
        const int bp = position_in_bag(node.bag, node.vertex);
        for (const auto& [l, slice] : child.slices()) {
          const Label l2 = deg_insert(l, bp);
          for (const auto& [p, w] : slice) table.upsert_min(l2, p, w);
        }
        break;
      }
      case NodeKind::IntroduceEdge: {
        const WeightedTable& child = *tables[node.child0];
        const int bu = position_in_bag(node.bag, node.edge_u);
        const int bv = position_in_bag(node.bag, node.edge_v);
        const bool cover_ok = node.seen_vertices == n;
        table = child;  // skip branch
        for (const auto& [l, slice] : child.slices()) {
          const int du = deg_at(l, bu);
          const int dv = deg_at(l, bv);
          if (du == 2 || dv == 2) continue;
          if (du == 1 && dv == 1) {
            // closing an edge between two path endpoints
            for (const auto& [p, w] : slice) {
              Pairing pairing = expand(l, p, bag_size);
              if (pairing.partner[bu] == bv) {
                // closes a cycle; only valid as the full Hamiltonian cycle
                if (cover_ok) {
                  bool others_done = true;
                  for (int pos = 0; pos < bag_size && others_done; ++pos) {
                    if (pos == bu || pos == bv) continue;
                    others_done = deg_at(l, pos) == 2;
                  }
                  if (others_done) {
                    offer_completion(checked_add(w, node.edge_weight));
                  }
                }
                continue;
              }
              // merge two open paths end to end
              const int x = pairing.partner[bu];
              const int y = pairing.partner[bv];
              pairing.partner[bu] = kNone;
              pairing.partner[bv] = kNone;
              pairing.partner[x] = static_cast<std::int8_t>(y);
              pairing.partner[y] = static_cast<std::int8_t>(x);
              const Label l2 = with_deg(with_deg(l, bu, 2), bv, 2);
              table.upsert_min(l2, compress(l2, pairing, bag_size),
                               checked_add(w, node.edge_weight));
            }
          } else {
            const Label l2 = with_deg(with_deg(l, bu, du + 1), bv, dv + 1);
            for (const auto& [p, w] : slice) {
              Pairing pairing = expand(l, p, bag_size);
              if (du == 0 && dv == 0) {
                pairing.partner[bu] = static_cast<std::int8_t>(bv);
                pairing.partner[bv] = static_cast<std::int8_t>(bu);
              } else if (du == 0) {
                // bv was an endpoint; bu replaces it on that path
                const int x = pairing.partner[bv];
                pairing.partner[bv] = kNone;
                pairing.partner[bu] = static_cast<std::int8_t>(x);
                pairing.partner[x] = static_cast<std::int8_t>(bu);
              } else {
                const int x = pairing.partner[bu];
                pairing.partner[bu] = kNone;
                pairing.partner[bv] = static_cast<std::int8_t>(x);
                pairing.partner[x] = static_cast<std::int8_t>(bv);
              }
              table.upsert_min(l2, compress(l2, pairing, bag_size),
                               checked_add(w, node.edge_weight));
            }
          }
        }
        break;
      }
      case NodeKind::ForgetVertex: {
        const WeightedTable& child = *tables[node.child0];
        const int bp = position_in_bag(nodes[node.child0].bag, node.vertex);
        for (const auto& [l, slice] : child.slices()) {
          if (deg_at(l, bp) != 2) continue;  // unfinished vertices die here
          const Label l2 = deg_remove(l, bp);
          for (const auto& [p, w] : slice) table.upsert_min(l2, p, w);
        }
        break;
      }
      case NodeKind::Join: {
        const WeightedTable& a = *tables[node.child0];
        const WeightedTable& b = *tables[node.child1];
        const bool cover_ok = node.seen_vertices == n;
        for (const auto& [la, sa] : a.slices()) {
          for (const auto& [lb, sb] : b.slices()) {
            bool compatible = true;
            bool all_two = true;
            for (int pos = 0; pos < bag_size && compatible; ++pos) {
              const int d = deg_at(la, pos) + deg_at(lb, pos);
              compatible = d <= 2;
              all_two = all_two && d == 2;
            }
            if (!compatible) continue;
            Label lc = 0;
            for (int pos = 0; pos < bag_size; ++pos) {
              lc = with_deg(lc, pos, deg_at(la, pos) + deg_at(lb, pos));
            }
            for (const auto& [pa, wa] : sa) {
              const Pairing qa = expand(la, pa, bag_size);
              for (const auto& [pb, wb] : sb) {
                const Pairing qb = expand(lb, pb, bag_size);
                // glue the two path systems with a union-find over positions
                std::array<int, kMaxUniverse> parent{};
                for (int pos = 0; pos < bag_size; ++pos) parent[pos] = pos;
                auto find = [&](int x) {
                  while (parent[x] != x) {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                  }
                  return x;
                };
                int cycles = 0;
                for (const Pairing* q : {&qa, &qb}) {
                  for (int pos = 0; pos < bag_size; ++pos) {
                    const int mate = q->partner[pos];
                    if (mate == kNone || mate < pos) continue;
                    const int ra = find(pos);
                    const int rb = find(mate);
                    if (ra == rb) {
                      ++cycles;
                    } else {
                      parent[std::max(ra, rb)] = std::min(ra, rb);
                    }
                  }
                }
                if (cycles > 0) {
                  // with every combined degree at 2 there are no open path
                  // ends left, so one closing means one spanning cycle
                  if (cycles == 1 && all_two && cover_ok) {
                    offer_completion(checked_add(wa, wb));
                  }
                  continue;
                }
                // endpoints of each glued path pair up
                Pairing pc;
                std::array<int, kMaxUniverse> first_end{};
                first_end.fill(kNone);
                for (int pos = 0; pos < bag_size; ++pos) {
                  const int du = (qa.partner[pos] != kNone ? 1 : 0) +
                                 (qb.partner[pos] != kNone ? 1 : 0);
                  if (du != 1) continue;
                  const int root = find(pos);
                  if (first_end[root] == kNone) {
                    first_end[root] = pos;
                  } else {
                    pc.partner[first_end[root]] = static_cast<std::int8_t>(pos);
                    pc.partner[pos] = static_cast<std::int8_t>(first_end[root]);
                    first_end[root] = kNone;
                  }
                }
                table.upsert_min(lc, compress(lc, pc, bag_size),
                                 checked_add(wa, wb));
              }
            }
          }
        }
        break;
      }
    }
    for (int c : {node.child0, node.child1}) {
      if (c >= 0) {
        alive_rows -= tables[c]->total_rows();
        tables[c].reset();
      }
    }

    apply_reduce_policy(table, policy, nd.width(), /*matchings=*/true,
                        universe_of, stats);
    if (limits.node_observer) limits.node_observer(i, table);

    const std::uint64_t rows = table.total_rows();
    stats.max_node_rows = std::max(stats.max_node_rows, rows);
    alive_rows += rows;
    stats.max_live_rows = std::max(stats.max_live_rows, alive_rows);
    tables[i] = std::move(table);
  }

  result.weight = best;
  finish();
  return result;
}

}  // namespace twr
