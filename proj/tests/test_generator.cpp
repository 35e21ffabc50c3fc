#include <doctest.h>

#include <set>

#include "twreduce/generator.hpp"
#include "twreduce/nice_decomposition.hpp"

using namespace twr;

TEST_CASE("rng draws are deterministic and bounded") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.below(97);
    CHECK(x == b.below(97));
    CHECK(x < 97);
  }
  Rng c(43);
  CHECK(c.range(5, 5) == 5);
  CHECK_THROWS_AS(c.below(0), ContractError);
}

TEST_CASE("partial ktrees come with a valid decomposition of the stated width") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const auto gen = random_partial_ktree(20, 4, 600, 7, seed);
    CHECK(gen.td.width() == 4);
    validate_decomposition(gen.td, gen.graph);  // throws on violation
    CHECK(gen.graph.vertex_count() == 20);
    CHECK(gen.graph.validate_adjacency());
    // same seed, same instance
    const auto again = random_partial_ktree(20, 4, 600, 7, seed);
    CHECK(again.graph.edges() == gen.graph.edges());
    CHECK(again.td.bags == gen.td.bags);
  }
  CHECK_THROWS_AS(random_partial_ktree(3, 4, 1000, 5, 1), ContractError);
}

TEST_CASE("ktree skeleton keeps instances connected") {
  const auto gen = random_partial_ktree(30, 3, 0, 5, 9);
  // zero keep rate leaves exactly a spanning skeleton
  CHECK(gen.graph.edge_count() == 29);
  std::vector<bool> seen(30, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const auto& [v, w] : gen.graph.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
    }
  }
  CHECK(count == 30);
}

TEST_CASE("cycle instances carry their width-2 path decomposition") {
  const auto gen = cycle_instance(12);
  CHECK(gen.graph.vertex_count() == 12);
  CHECK(gen.graph.edge_count() == 12);
  CHECK(gen.td.width() == 2);
  CHECK(gen.td.bags.size() == 10);
  validate_decomposition(gen.td, gen.graph);
  const auto nd = nicify(gen.td, gen.graph);
  nd.check_invariants(gen.graph);
  CHECK_THROWS_AS(cycle_instance(2), ContractError);
}

TEST_CASE("random graphs have the requested size") {
  const Graph g = random_graph(9, 14, 5, 123);
  CHECK(g.vertex_count() == 9);
  CHECK(g.edge_count() == 14);
  std::set<std::pair<int, int>> seen;
  for (const GraphEdge& e : g.edges()) {
    CHECK(e.u < e.v);
    CHECK(e.w >= 1);
    CHECK(e.w <= 5);
    CHECK(seen.insert({e.u, e.v}).second);
  }
  CHECK_THROWS_AS(random_graph(3, 9, 5, 1), ContractError);
}
