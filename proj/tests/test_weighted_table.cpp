#include <doctest.h>

#include <algorithm>
#include <set>

#include "twreduce/generator.hpp"
#include "twreduce/weighted_table.hpp"

using namespace twr;

namespace {

Partition parse(std::initializer_list<int> labels) {
  std::vector<int> raw(labels);
  return Partition::from_labels(raw);
}

Weight weight_of(const WeightedTable& t, Label l, const Partition& p) {
  const auto* slice = t.find_slice(l);
  REQUIRE(slice != nullptr);
  const auto it = slice->find(p);
  REQUIRE(it != slice->end());
  return it->second;
}

}  // namespace

TEST_CASE("upsert_min keeps one minimal entry per key") {
  WeightedTable t;
  t.upsert_min(3, parse({0, 1}), 10);
  t.upsert_min(3, parse({0, 1}), 7);
  t.upsert_min(3, parse({0, 1}), 9);
  CHECK(t.total_rows() == 1);
  CHECK(weight_of(t, 3, parse({0, 1})) == 7);
}

TEST_CASE("tbl_union takes minima on collisions") {
  const Partition p = parse({0, 1, 0});
  const Partition q = parse({0, 0, 1});
  WeightedTable a, b;
  a.upsert_min(0, p, 3);
  b.upsert_min(0, p, 5);
  CHECK(weight_of(tbl_union(a, b), 0, p) == 3);
  WeightedTable c;
  c.upsert_min(0, q, 5);
  const auto both = tbl_union(a, c);
  CHECK(both.total_rows() == 2);
  CHECK(tbl_union(WeightedTable{}, b) == b);
}

TEST_CASE("tbl_insert appends singleton blocks") {
  WeightedTable a;
  a.upsert_min(0, parse({0, 0}), 4);
  const auto out = tbl_insert(a, 2);
  CHECK(out.total_rows() == 1);
  CHECK(weight_of(out, 0, parse({0, 0, 1})) == 4);
  CHECK(tbl_insert(WeightedTable{}, 0).empty());
  WeightedTable empty_universe;
  empty_universe.upsert_min(0, Partition{}, 2);
  CHECK(weight_of(tbl_insert(empty_universe, 0), 0, parse({0})) == 2);
}

TEST_CASE("tbl_glue merges blocks and pays the edge") {
  WeightedTable a;
  a.upsert_min(0, parse({0, 1}), 2);
  const auto out = tbl_glue(a, 0, 1, 5);
  CHECK(weight_of(out, 0, parse({0, 0})) == 7);

  WeightedTable same_block;
  same_block.upsert_min(0, parse({0, 0}), 2);
  CHECK(weight_of(tbl_glue(same_block, 0, 1, 5), 0, parse({0, 0})) == 7);

  CHECK(tbl_glue(WeightedTable{}, 0, 1, 5).empty());

  WeightedTable near_max;
  near_max.upsert_min(0, parse({0, 1}), kInfiniteWeight - 2);
  CHECK_THROWS_AS(tbl_glue(near_max, 0, 1, 5), OverflowError);
}

TEST_CASE("tbl_project drops dead singletons and merges survivors") {
  WeightedTable a;
  a.upsert_min(0, parse({0, 1}), 3);
  int dropped = 0;
  const auto out = tbl_project(
      a, [](Label l) { return ProjectSpec{l, 1, true}; },
      [&](Label, const Partition&, Weight w) {
        ++dropped;
        CHECK(w == 3);
      });
  CHECK(out.empty());
  CHECK(dropped == 1);

  WeightedTable b;
  b.upsert_min(0, parse({0, 0}), 3);
  CHECK(weight_of(tbl_project(b, 1, true), 0, parse({0})) == 3);

  // two entries collapsing onto one projected key keep the minimum
  WeightedTable c;
  c.upsert_min(0, parse({0, 1, 0}), 9);
  c.upsert_min(0, parse({0, 0, 0}), 11);
  const auto merged = tbl_project(c, 2, false);
  CHECK(merged.total_rows() == 2);
  CHECK(weight_of(merged, 0, parse({0, 1})) == 9);
  CHECK(weight_of(merged, 0, parse({0, 0})) == 11);
  WeightedTable d;
  d.upsert_min(0, parse({0, 1, 1}), 9);
  d.upsert_min(0, parse({0, 1, 0}), 4);
  const auto merged2 = tbl_project(d, 2, false);
  CHECK(merged2.total_rows() == 1);
  CHECK(weight_of(merged2, 0, parse({0, 1})) == 4);
}

TEST_CASE("tbl_join pairs compatible labels through the lattice join") {
  const Partition p = parse({0, 1, 0});
  WeightedTable a, b;
  a.upsert_min(7, p, 1);
  b.upsert_min(7, Partition::singletons(3), 0);
  const auto neutral = tbl_join(a, b);
  CHECK(neutral.total_rows() == 1);
  CHECK(weight_of(neutral, 7, p) == 1);

  // 2 x 3 compatible pairs with all-distinct results
  WeightedTable c, d;
  c.upsert_min(0, parse({0, 1, 2, 3}), 1);
  c.upsert_min(0, parse({0, 0, 1, 2}), 2);
  d.upsert_min(0, parse({0, 1, 1, 2}), 10);
  d.upsert_min(0, parse({0, 1, 2, 2}), 20);
  d.upsert_min(0, parse({0, 1, 2, 0}), 40);
  const auto product = tbl_join(c, d);
  CHECK(product.total_rows() == 6);
  CHECK(weight_of(product, 0, parse({0, 1, 1, 2})) == 11);

  CHECK(tbl_join(WeightedTable{}, d).empty());

  // incompatible labels are skipped entirely
  WeightedTable e;
  e.upsert_min(9, p, 5);
  CHECK(tbl_join(e, d).empty());
}

TEST_CASE("footprints commute with operations on full certificates") {
  // A certificate is a partition of a larger ground set; its footprint on a
  // bag keeps only bag positions. Gluing two bag vertices or dropping one
  // from the bag must commute with the same operation on the certificate.
  Rng rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = static_cast<int>(rng.range(2, 8));
    std::vector<int> cert(n);
    for (int& x : cert) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int bag_size = static_cast<int>(rng.range(1, static_cast<std::uint64_t>(n)));
    std::vector<int> bag;
    for (int v = 0; v < n; ++v) bag.push_back(v);
    for (int i = 0; i < n - bag_size; ++i) {
      bag.erase(bag.begin() + static_cast<long>(rng.below(bag.size())));
    }
    auto footprint = [&](const std::vector<int>& labels) {
      std::vector<int> raw;
      for (int v : bag) raw.push_back(labels[v]);
      return Partition::from_labels(raw);
    };
    // a valid certificate has every block touching the bag; keep only those
    bool valid = true;
    for (int v = 0; v < n; ++v) {
      bool touches = false;
      for (int b : bag) touches = touches || cert[b] == cert[v];
      valid = valid && touches;
    }
    if (!valid) continue;
    // glue two bag vertices
    const int i = static_cast<int>(rng.below(bag.size()));
    const int j = static_cast<int>(rng.below(bag.size()));
    std::vector<int> glued = cert;
    for (int& x : glued) {
      if (x == cert[bag[j]]) x = cert[bag[i]];
    }
    CHECK(footprint(glued) == footprint(cert).with_blocks_merged(i, j));
    // drop a bag vertex whose block still touches the rest of the bag
    const int drop = static_cast<int>(rng.below(bag.size()));
    const Partition before = footprint(cert);
    std::vector<int> smaller_bag = bag;
    smaller_bag.erase(smaller_bag.begin() + drop);
    bool still_touches = false;
    for (int b : smaller_bag) still_touches = still_touches || cert[b] == cert[bag[drop]];
    std::vector<int> raw;
    for (int v : smaller_bag) raw.push_back(cert[v]);
    if (still_touches) {
      CHECK(Partition::from_labels(raw) == before.with_position_removed(drop));
    } else {
      // certificate becomes invalid exactly when the footprint block was a
      // singleton, the must-connect death in tbl_project
      CHECK(before.block_is_singleton(drop));
    }
  }
}

TEST_CASE("dump is sorted and stable") {
  WeightedTable t;
  t.upsert_min(2, parse({0, 1}), 5);
  t.upsert_min(1, parse({0, 0}), 3);
  t.upsert_min(1, parse({0, 1}), 4);
  t.upsert_min(0, Partition{}, 0);
  CHECK(t.dump() == "0 - 0\n1 00 3\n1 01 4\n2 01 5\n");
}
