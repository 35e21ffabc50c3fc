#pragma once

#include <optional>

#include "twreduce/graph.hpp"
#include "twreduce/nice_decomposition.hpp"
#include "twreduce/policy.hpp"

namespace twr {

struct SolveResult {
  std::optional<Weight> weight;  // nullopt = infeasible
  RunStats stats;
};

/// Minimum total edge weight of a connected subgraph spanning all terminals,
/// by dynamic programming over the nice decomposition. The state label is
/// the subset of bag positions chosen into the partial tree; the partition
/// tracks its connectivity on those positions.
SolveResult solve_steiner(const SteinerInstance& inst, const NiceDecomposition& nd,
                          const ReducePolicy& policy, const SolveLimits& limits = {});

}  // namespace twr
