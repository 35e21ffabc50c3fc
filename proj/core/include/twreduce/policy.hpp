#pragma once

#include <cstdint>
#include <functional>

#include "twreduce/reduce.hpp"
#include "twreduce/weighted_table.hpp"

namespace twr {

enum class ReducePolicyKind { Never, Always, Threshold };

/// When to compress DP tables. Threshold compares the summed rows of all
/// slices at a node; once it trips, every slice at that node is reduced.
struct ReducePolicy {
  ReducePolicyKind kind = ReducePolicyKind::Never;
  /// Row threshold; 0 means "use the default 2^(width+1) of the instance".
  std::uint64_t threshold_rows = 0;
  /// Prefer the matchings-specific reducer on perfect-matching slices.
  bool matchings_reducer = true;

  static ReducePolicy never() { return {ReducePolicyKind::Never, 0, true}; }
  static ReducePolicy always() { return {ReducePolicyKind::Always, 0, true}; }
  static ReducePolicy threshold(std::uint64_t rows) {
    return {ReducePolicyKind::Threshold, rows, true};
  }
};

/// Aggregate instrumentation for one solver run.
struct RunStats {
  std::uint64_t nodes = 0;
  std::uint64_t width = 0;
  std::uint64_t max_node_rows = 0;            // largest single-node table
  std::uint64_t max_live_rows = 0;            // largest set of alive rows
  std::uint64_t max_slice_rows = 0;           // largest slice after the policy ran
  std::uint64_t max_slice_rows_pre_reduce = 0;  // largest slice before
  std::uint64_t reduce_calls = 0;
  std::uint64_t reduce_skipped_slices = 0;    // universes beyond the guards
  std::uint64_t rows_eliminated = 0;
  ReduceStats reduce_total;
  std::uint64_t wall_nanos = 0;
  std::uint64_t peak_memory_bytes_estimate = 0;
};

/// Options shared by the solvers.
struct SolveLimits {
  std::uint64_t timeout_ms = 0;  // 0 = unlimited
  /// Test hook: observes each node's table after the reduce policy ran.
  std::function<void(std::size_t node, const WeightedTable&)> node_observer;
};

/// Applies `policy` to every slice of a node table in place.
/// `universe_of(label)` gives the slice's partition universe size;
/// `matchings` selects reduce_matchings for slices that are perfect
/// matchings. Slices too wide for the guards are left intact and counted.
void apply_reduce_policy(WeightedTable& table, const ReducePolicy& policy,
                         int width, bool matchings,
                         const std::function<int(Label)>& universe_of,
                         RunStats& stats);

}  // namespace twr
