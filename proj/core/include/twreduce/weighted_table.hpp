#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include "twreduce/common.hpp"
#include "twreduce/partition.hpp"

namespace twr {

/// Opaque problem-specific state label. The Steiner engine stores a subset
/// bitmask of bag positions, the Hamiltonicity engine a packed degree vector.
using Label = std::uint64_t;

/// Finite map (label, partition) -> minimal weight. At most one entry per
/// key; collisions resolve to the minimum; the infinity sentinel is never
/// stored. Entries are grouped by label because reduction operates on one
/// label slice at a time.
class WeightedTable {
 public:
  using Slice = std::unordered_map<Partition, Weight, PartitionHash>;
  using SliceMap = std::unordered_map<Label, Slice>;

  void upsert_min(Label label, const Partition& p, Weight w);

  const SliceMap& slices() const { return slices_; }
  SliceMap& mutable_slices() { return slices_; }

  const Slice* find_slice(Label label) const;

  bool empty() const { return slices_.empty(); }
  std::size_t total_rows() const;
  std::size_t max_slice_rows() const;

  /// Debug dump, one line per entry: `label partition weight`, partitions as
  /// base-32 restricted-growth digits, sorted for golden comparisons.
  std::string dump() const;

  bool operator==(const WeightedTable& o) const { return slices_ == o.slices_; }

 private:
  SliceMap slices_;
};

/// Union with minimum on key collisions. Identity: the empty table.
WeightedTable tbl_union(const WeightedTable& a, const WeightedTable& b);

/// How tbl_insert rewrites one label slice: the label after the new vertex
/// joins the bag, and the position (within that slice's partition universe)
/// where the new singleton block lands. `part_pos < 0` means the new vertex
/// does not enter the partition universe under this label.
struct InsertSpec {
  Label label;
  int part_pos;
};

WeightedTable tbl_insert(const WeightedTable& a,
                         const std::function<InsertSpec(Label)>& spec);
/// Uniform-position variant: every partition gains a singleton at `pos`.
WeightedTable tbl_insert(const WeightedTable& a, int pos);

/// Merge the blocks of two positions in every entry and pay the edge weight.
/// Slices mapped to nullopt are omitted from the result (the caller unions
/// the untouched table back in when it needs a keep-branch).
WeightedTable tbl_glue(
    const WeightedTable& a,
    const std::function<std::optional<std::pair<int, int>>(Label)>& positions,
    Weight edge_weight);
WeightedTable tbl_glue(const WeightedTable& a, int i, int j, Weight edge_weight);

/// How tbl_project rewrites one label slice when a vertex leaves the bag.
struct ProjectSpec {
  Label label;                  // label after the vertex is gone
  std::optional<int> part_pos;  // position to drop; nullopt = not in universe
  bool must_connect = false;    // isolated singleton blocks die
};

/// Removes one position per entry. Entries whose dropped position was a
/// singleton block die under must_connect semantics; `on_dropped` observes
/// each such death (the engines hook answer-completion checks here).
WeightedTable tbl_project(
    const WeightedTable& a, const std::function<ProjectSpec(Label)>& spec,
    const std::function<void(Label, const Partition&, Weight)>& on_dropped = {});
WeightedTable tbl_project(const WeightedTable& a, int pos, bool must_connect);

/// Pairwise combination of two tables over identical universes. `combine`
/// returns the joint label for a compatible pair or nullopt to skip it; the
/// partition is the lattice join and the weight the checked sum minus
/// `offset` (for engines that double-count something; ours pass 0).
WeightedTable tbl_join(
    const WeightedTable& a, const WeightedTable& b,
    const std::function<std::optional<Label>(Label, Label)>& combine,
    Weight offset = 0);
/// Same-label fast path: pairs slices with equal labels.
WeightedTable tbl_join(const WeightedTable& a, const WeightedTable& b);

}  // namespace twr
