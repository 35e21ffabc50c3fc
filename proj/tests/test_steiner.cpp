#include <doctest.h>

#include <algorithm>
#include <set>

#include "twreduce/generator.hpp"
#include "twreduce/oracles.hpp"
#include "twreduce/steiner.hpp"

using namespace twr;

namespace {

NiceDecomposition nice_of(const Graph& g) {
  return nicify(heuristic_decompose(g, DecomposeStrategy::MinDegree), g);
}

SteinerInstance random_instance(Rng& rng, int max_n) {
  const int n = static_cast<int>(rng.range(3, static_cast<std::uint64_t>(max_n)));
  const int m = static_cast<int>(
      rng.range(static_cast<std::uint64_t>(n - 2),
                static_cast<std::uint64_t>(n * (n - 1) / 2)));
  const Graph g = random_graph(n, m, 9, rng.next());
  std::set<int> terms;
  const int k = static_cast<int>(rng.range(1, std::min(4, n)));
  while (static_cast<int>(terms.size()) < k) {
    terms.insert(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
  }
  return {g, {terms.begin(), terms.end()}};
}

}  // namespace

TEST_CASE("steiner on the forced examples") {
  // star with the three leaves as terminals buys all three spokes
  const Graph star = parse_gr("p tw 4 3\n1 2\n1 3\n1 4\n");
  const SteinerInstance inst{star, {1, 2, 3}};
  CHECK(solve_steiner(inst, nice_of(star), ReducePolicy::never()).weight ==
        Weight{3});
  CHECK(solve_steiner(inst, nice_of(star), ReducePolicy::always()).weight ==
        Weight{3});

  CHECK(solve_steiner({star, {2}}, nice_of(star), ReducePolicy::never()).weight ==
        Weight{0});

  const Graph split = parse_gr("p tw 4 2\n1 2\n3 4\n");
  CHECK_FALSE(solve_steiner({split, {0, 2}}, nice_of(split),
                            ReducePolicy::never())
                  .weight.has_value());
}

TEST_CASE("two terminals reduce to a shortest path") {
  Rng rng(555);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = static_cast<int>(rng.range(3, 9));
    const Graph g = random_graph(
        n, static_cast<int>(rng.range(static_cast<std::uint64_t>(n - 1),
                                      static_cast<std::uint64_t>(n * (n - 1) / 2))),
        9, rng.next());
    const SteinerInstance inst{g, {0, n - 1}};
    const auto got = solve_steiner(inst, nice_of(g), ReducePolicy::never());
    CHECK(got.weight == oracle_steiner(inst));
  }
}

TEST_CASE("steiner matches the oracle under both policies") {
  Rng rng(8080);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = random_instance(rng, 9);
    const auto nd = nice_of(inst.graph);
    const auto expect = oracle_steiner(inst);
    const auto never = solve_steiner(inst, nd, ReducePolicy::never());
    const auto always = solve_steiner(inst, nd, ReducePolicy::always());
    CHECK(never.weight == expect);
    CHECK(always.weight == expect);
  }
}

TEST_CASE("adding a zero-weight edge never raises the answer") {
  Rng rng(123);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_instance(rng, 8);
    const auto base = solve_steiner(inst, nice_of(inst.graph),
                                    ReducePolicy::never());
    // splice in one extra zero-weight edge
    const int n = inst.graph.vertex_count();
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (u == v) v = (v + 1) % n;
    auto edges = inst.graph.edges();
    edges.push_back({std::min(u, v), std::max(u, v), 0});
    const SteinerInstance bigger{Graph(n, edges), inst.terminals};
    const auto grown = solve_steiner(bigger, nice_of(bigger.graph),
                                     ReducePolicy::never());
    if (base.weight.has_value()) {
      REQUIRE(grown.weight.has_value());
      CHECK(*grown.weight <= *base.weight);
    }
  }
}

TEST_CASE("always-reduce caps every slice at half its cut space") {
  Rng rng(31415);
  for (int trial = 0; trial < 10; ++trial) {
    const auto gen = random_partial_ktree(14, 5, 900, 8, rng.next());
    const SteinerInstance inst{gen.graph, {0, 3, 7, 11}};
    const auto nd = nicify(gen.td, gen.graph);
    const auto res = solve_steiner(inst, nd, ReducePolicy::always());
    // slices live on at most width+1 positions
    CHECK(res.stats.max_slice_rows <= (1ULL << nd.width()));
    CHECK(res.stats.reduce_calls > 0);
  }
}

TEST_CASE("policies agree on ktree instances") {
  Rng rng(2718);
  for (int trial = 0; trial < 10; ++trial) {
    const auto gen = random_partial_ktree(12, 4, 800, 9, rng.next());
    std::set<int> terms;
    while (terms.size() < 3) {
      terms.insert(static_cast<int>(rng.below(12)));
    }
    const SteinerInstance inst{gen.graph, {terms.begin(), terms.end()}};
    const auto nd = nicify(gen.td, gen.graph);
    const auto never = solve_steiner(inst, nd, ReducePolicy::never());
    const auto always = solve_steiner(inst, nd, ReducePolicy::always());
    const auto hybrid = solve_steiner(inst, nd, ReducePolicy::threshold(0));
    CHECK(never.weight == always.weight);
    CHECK(never.weight == hybrid.weight);
    CHECK(never.weight == oracle_steiner(inst));
  }
}

TEST_CASE("terminals confined to one component stay feasible") {
  // two components; all terminals in the first
  const Graph g = parse_gr("p tw 6 5\n1 2 2\n2 3 3\n1 3 9\n4 5\n5 6\n");
  const SteinerInstance inst{g, {0, 2}};
  const auto res = solve_steiner(inst, nice_of(g), ReducePolicy::always());
  CHECK(res.weight == Weight{5});
  CHECK(res.weight == oracle_steiner(inst));
}

TEST_CASE("zero-weight edges are handled exactly") {
  const Graph g = parse_gr("p tw 4 4\n1 2 0\n2 3 0\n3 4 0\n1 4 5\n");
  const SteinerInstance inst{g, {0, 3}};
  CHECK(solve_steiner(inst, nice_of(g), ReducePolicy::never()).weight == Weight{0});
}

TEST_CASE("node table dumps are golden-stable") {
  // P3 with both ends as terminals; the table after the last introduce-edge
  // on the single-bag chain is deterministic
  const Graph g = parse_gr("p tw 3 2\n1 2 4\n2 3 6\n");
  const auto td = parse_td("s td 1 3 3\nb 1 1 2 3\n", 3);
  const auto nd = nicify(td, g);
  std::vector<std::string> dumps(nd.nodes().size());
  SolveLimits limits;
  limits.node_observer = [&](std::size_t node, const WeightedTable& table) {
    dumps[node] = table.dump();
  };
  const SteinerInstance inst{g, {0, 2}};
  const auto res = solve_steiner(inst, nd, ReducePolicy::never(), limits);
  CHECK(res.weight == Weight{10});
  int last_edge = -1;
  for (std::size_t i = 0; i < nd.nodes().size(); ++i) {
    if (nd.nodes()[i].kind == NodeKind::IntroduceEdge) last_edge = static_cast<int>(i);
  }
  REQUIRE(last_edge >= 0);
  // labels are chosen-subset bitmasks over bag positions; both terminals are
  // forced in, the middle vertex (bit 1) is optional. With it chosen, the
  // partition reflects which of the two edges were bought.
  CHECK(dumps[last_edge] ==
        "5 01 0\n"
        "7 000 10\n"
        "7 001 4\n"
        "7 011 6\n"
        "7 012 0\n");
}

TEST_CASE("steiner contract checks") {
  const Graph g = parse_gr("p tw 3 2\n1 2\n2 3\n");
  const auto nd = nice_of(g);
  CHECK_THROWS_AS(solve_steiner({g, {}}, nd, ReducePolicy::never()),
                  ContractError);
  CHECK_THROWS_AS(solve_steiner({g, {7}}, nd, ReducePolicy::never()),
                  ContractError);
  // decomposition from a different graph is rejected
  const Graph other = parse_gr("p tw 5 4\n1 2\n2 3\n3 4\n4 5\n");
  CHECK_THROWS_AS(
      solve_steiner({other, {0, 4}}, nd, ReducePolicy::never()),
      ContractError);
}
