#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "twreduce/graph.hpp"
#include "twreduce/partition.hpp"
#include "twreduce/reduce.hpp"

namespace twr {

/// Size guards for the brute-force oracles. Everything here is desk scale;
/// inputs past the budget are refused, never approximated.
struct OracleBudget {
  int max_vertices = 10;
  int max_held_karp_vertices = 16;
  int max_universe = 8;
  int max_matchings_universe = 8;
};

/// Hamiltonian cycle decision by permutation enumeration.
bool oracle_hamilton(const Graph& g, const OracleBudget& budget = {});

/// Minimum Hamiltonian cycle weight by Held-Karp bitmask DP.
std::optional<Weight> oracle_tsp(const Graph& g, const OracleBudget& budget = {});

/// Minimum Steiner tree weight, Dreyfus-Wagner subset DP over terminals.
std::optional<Weight> oracle_steiner(const SteinerInstance& inst,
                                     const OracleBudget& budget = {});

/// Same answer by exhaustive edge-subset search (edge count <= 20).
std::optional<Weight> oracle_steiner_exhaustive(const SteinerInstance& inst,
                                                const OracleBudget& budget = {});

/// Bell number by the Bell-triangle recurrence; exact in 64 bits up to t=25.
std::uint64_t bell(int t);

/// Checks the reduce contract: for every partition q of the t-universe, the
/// minimum weight over rows whose blocks connect with q into one component
/// must be identical in `input` and `output`. Entirely oracle-side: its own
/// partition enumeration and its own union-find connectivity test.
bool oracle_representative(const std::vector<TableRow>& input,
                           const std::vector<TableRow>& output, int t,
                           const OracleBudget& budget = {});

/// The reduce_matchings contract: quantifies over all perfect matchings q
/// and tests "union forms one Hamiltonian cycle" with an oracle-side walk.
bool oracle_representative_matchings(const std::vector<TableRow>& input,
                                     const std::vector<TableRow>& output, int t,
                                     const OracleBudget& budget = {});

/// GF(2) rank of the full matchings-compatibility matrix of a t-universe,
/// computed with an oracle-side elimination over bool vectors.
int oracle_matchings_matrix_rank(int t, const OracleBudget& budget = {});

/// Oracle-side enumerations (independent of the partition-algebra module;
/// cross-checked against it in tests).
std::vector<Partition> oracle_all_partitions(int t, const OracleBudget& budget = {});
std::vector<Partition> oracle_all_matchings(int t, const OracleBudget& budget = {});

/// Precomputed q-indexed compatibility oracle used by the high-volume
/// acceptance runs: fits[i][j] = rows i and j connect into one component
/// (or one cycle, in matchings mode).
class FitsOracle {
 public:
  static FitsOracle partitions(int t, const OracleBudget& budget = {});
  static FitsOracle matchings(int t, const OracleBudget& budget = {});

  const std::vector<Partition>& all() const { return all_; }
  int index_of(const Partition& p) const;
  bool fits(int i, int j) const { return bits_[static_cast<std::size_t>(i) * all_.size() + j]; }

 private:
  std::vector<Partition> all_;
  std::vector<bool> bits_;
};

}  // namespace twr
