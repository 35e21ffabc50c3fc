#include <doctest.h>

#include <algorithm>

#include "twreduce/generator.hpp"
#include "twreduce/graph.hpp"

using namespace twr;

TEST_CASE("parse_gr reads the PACE format") {
  const Graph g = parse_gr("p tw 3 2\n1 2\n2 3\n");
  CHECK(g.vertex_count() == 3);
  REQUIRE(g.edge_count() == 2);
  CHECK(g.edges()[0] == GraphEdge{0, 1, 1});
  CHECK(g.edges()[1] == GraphEdge{1, 2, 1});

  const Graph w = parse_gr("c comment\np tw 2 1\n1 2 7\n");
  REQUIRE(w.edge_count() == 1);
  CHECK(w.edges()[0] == GraphEdge{0, 1, 7});
}

TEST_CASE("parse_gr errors name the line") {
  CHECK_THROWS_WITH_AS(parse_gr("p tw 2 1\n1 3\n"),
                       "vertex id out of range, line 2", ParseError);
  CHECK_THROWS_WITH_AS(parse_gr("p tw 2 1\n1 2 -4\n"),
                       "negative weight, line 2", ParseError);
  CHECK_THROWS_WITH_AS(parse_gr("p cep 2 1\n1 2\n"),
                       "malformed header, expected `p tw <n> <m>`, line 1",
                       ParseError);
  CHECK_THROWS_AS(parse_gr("p tw 3 2\n1 2\n"), ParseError);   // m mismatch
  CHECK_THROWS_AS(parse_gr("p tw 3 1\n1 2\n2 3\n"), ParseError);
  CHECK_THROWS_AS(parse_gr("1 2\n"), ParseError);             // edge first
  CHECK_THROWS_AS(parse_gr("p tw 3 1\n2 2\n"), ParseError);   // self-loop
  CHECK_THROWS_AS(parse_gr(""), ParseError);
}

TEST_CASE("parallel edges collapse to the minimum weight") {
  const Graph g = parse_gr("p tw 2 3\n1 2 9\n2 1 4\n1 2 6\n");
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edges()[0].w == 4);
}

TEST_CASE("graph round-trips through write_gr") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = static_cast<int>(rng.range(1, 12));
    const int max_m = n * (n - 1) / 2;
    const Graph g = random_graph(n, static_cast<int>(rng.below(max_m + 1)), 9,
                                 rng.next());
    const Graph back = parse_gr(write_gr(g));
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(back.edges() == g.edges());
    CHECK(back.validate_adjacency());
  }
}

TEST_CASE("adjacency index is consistent") {
  const Graph g = parse_gr("p tw 4 3\n1 2 5\n2 3\n2 4 2\n");
  CHECK(g.validate_adjacency());
  CHECK(g.degree(1) == 3);
  CHECK(g.degree(3) == 1);
  REQUIRE(g.find_edge(1, 0).has_value());
  CHECK(g.edges()[*g.find_edge(1, 0)].w == 5);
  CHECK_FALSE(g.find_edge(0, 3).has_value());
  const auto nb = g.neighbors(1);
  CHECK(nb.size() == 3);
}

TEST_CASE("parsers reject mangled input without crashing") {
  Rng rng(606);
  const std::string valid = "p tw 6 5\n1 2\n2 3\n3 4\n4 5\n5 6\n";
  const std::string charset = "ptw 0123456789\n-c";
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    if (rng.chance(1, 2)) {
      // mutate a valid file
      text = valid;
      const int edits = static_cast<int>(rng.range(1, 6));
      for (int e = 0; e < edits; ++e) {
        const std::size_t pos = rng.below(text.size());
        text[pos] = charset[rng.below(charset.size())];
      }
    } else {
      // raw noise
      const std::size_t len = rng.below(60);
      for (std::size_t i = 0; i < len; ++i) {
        text.push_back(charset[rng.below(charset.size())]);
      }
    }
    try {
      const Graph g = parse_gr(text);
      CHECK(g.validate_adjacency());  // accepted input must be coherent
    } catch (const ParseError&) {
      // expected for most mutations
    }
  }
}

TEST_CASE("parse_terminals dedups and validates") {
  CHECK(parse_terminals("1 4 4", 5) == std::vector<int>{0, 3});
  CHECK(parse_terminals("3\n1\n", 3) == std::vector<int>{0, 2});
  CHECK_THROWS_WITH_AS(parse_terminals("", 5), "Steiner requires >=1 terminal",
                       ParseError);
  CHECK_THROWS_AS(parse_terminals("9", 5), ParseError);
  CHECK_THROWS_AS(parse_terminals("0", 5), ParseError);
  CHECK_THROWS_AS(parse_terminals("2x", 5), ParseError);
}
