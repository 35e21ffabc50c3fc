#include "twreduce/policy.hpp"

#include <algorithm>

namespace twr {

void apply_reduce_policy(WeightedTable& table, const ReducePolicy& policy,
                         int width, bool matchings,
                         const std::function<int(Label)>& universe_of,
                         RunStats& stats) {
  for (const auto& [label, slice] : table.slices()) {
    stats.max_slice_rows_pre_reduce =
        std::max(stats.max_slice_rows_pre_reduce,
                 static_cast<std::uint64_t>(slice.size()));
  }
  bool run = false;
  switch (policy.kind) {
    case ReducePolicyKind::Never:
      break;
    case ReducePolicyKind::Always:
      run = true;
      break;
    case ReducePolicyKind::Threshold: {
      std::uint64_t threshold = policy.threshold_rows;
      if (threshold == 0) {
        const int shift = std::clamp(width + 1, 0, 62);
        threshold = 1ULL << shift;
      }
      run = table.total_rows() > threshold;
      break;
    }
  }
  if (run) {
    for (auto& [label, slice] : table.mutable_slices()) {
      const int t = universe_of(label);
      if (t < 1 || slice.size() < 2) continue;  // nothing a basis could drop
      std::vector<TableRow> rows;
      rows.reserve(slice.size());
      for (const auto& [p, w] : slice) rows.push_back({p, w});
      ReduceResult res;
      if (matchings && t <= kMaxMatchingUniverse) {
        res = reduce_matchings(std::move(rows), t);
      } else if (t <= kMaxCutUniverse) {
        res = reduce(std::move(rows), t);
      } else {
        ++stats.reduce_skipped_slices;
        continue;
      }
      ++stats.reduce_calls;
      stats.rows_eliminated += res.stats.rows_in - res.stats.rows_out;
      stats.reduce_total += res.stats;
      slice.clear();
      for (const TableRow& r : res.rows) slice.emplace(r.part, r.weight);
    }
  }
  for (const auto& [label, slice] : table.slices()) {
    stats.max_slice_rows = std::max(stats.max_slice_rows,
                                    static_cast<std::uint64_t>(slice.size()));
  }
}

}  // namespace twr
