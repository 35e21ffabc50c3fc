#pragma once

#include <cstdint>
#include <vector>

#include "twreduce/common.hpp"
#include "twreduce/gf2.hpp"
#include "twreduce/partition.hpp"

namespace twr {

/// Universe-size guard for the general cut matrix (2^20 columns).
inline constexpr int kMaxCutUniverse = 21;
/// Universe-size guard for the all-matchings column family (11!! = 10395).
inline constexpr int kMaxMatchingUniverse = 12;

/// Instrumentation for one reduction call.
struct ReduceStats {
  std::uint64_t rows_in = 0;
  std::uint64_t rows_out = 0;
  std::uint64_t cols = 0;
  std::uint64_t xor_word_ops = 0;
  std::uint64_t nanos = 0;

  ReduceStats& operator+=(const ReduceStats& o);
};

/// One row of a single-label table slice.
struct TableRow {
  Partition part;
  Weight weight = 0;
};

struct ReduceResult {
  std::vector<TableRow> rows;
  ReduceStats stats;
};

/// Row of the cut matrix for a partition of a t-element universe, as plain
/// bits for inspection. Columns are indexed by the subsets S of the universe
/// with position 0 in S, in increasing integer encoding (S = 2c + 1 for
/// column c); the bit is set iff every block of p lies entirely inside S or
/// entirely inside its complement.
std::vector<bool> cut_row_bits(const Partition& p);

/// Compress a one-label slice to a representative row basis of its cut
/// matrix. Rows are sorted by (weight, digit string) and the earliest
/// independent rows are kept, so for every completion q the minimum weight
/// over rows whose join with q is the single-block partition is preserved
/// exactly. Output never exceeds 2^(t-1) rows.
ReduceResult reduce(std::vector<TableRow> rows, int t);

/// True iff the union of two perfect matchings of the same even universe is
/// a single cycle through all elements.
bool fits_cycle(const Partition& p, const Partition& q);

/// All perfect matchings of a t-element universe (t even), in the canonical
/// order that repeatedly pairs the smallest free element with each larger
/// free element in ascending order. Count is (t-1)!!.
std::vector<Partition> enumerate_perfect_matchings(int t);

/// reduce specialized to slices whose partitions are all perfect matchings:
/// the compatibility matrix has one column per perfect matching and entries
/// from fits_cycle. Output is asserted to stay within 2^(t/2) rows.
ReduceResult reduce_matchings(std::vector<TableRow> rows, int t);

}  // namespace twr
