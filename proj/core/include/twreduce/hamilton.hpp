#pragma once

#include "twreduce/graph.hpp"
#include "twreduce/nice_decomposition.hpp"
#include "twreduce/policy.hpp"
#include "twreduce/steiner.hpp"

namespace twr {

enum class HamiltonMode { Decision, Tsp };

/// Hamiltonian cycle decision / minimum-weight Hamiltonian cycle (TSP) by
/// dynamic programming over the nice decomposition. The state label packs a
/// degree in {0,1,2} per bag position; the partition is the perfect matching
/// pairing the open-path endpoints (degree-1 positions). Closed cycles never
/// enter a table; a completed Hamiltonian cycle goes to an answer
/// accumulator instead.
SolveResult solve_hamilton(const Graph& g, const NiceDecomposition& nd,
                           HamiltonMode mode, const ReducePolicy& policy,
                           const SolveLimits& limits = {});

}  // namespace twr
