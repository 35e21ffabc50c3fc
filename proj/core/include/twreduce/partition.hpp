#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "twreduce/common.hpp"

namespace twr {

/// Largest supported bag universe. Keeps a packed partition in two 64-bit
/// words and lets subsets of a bag live in a single word.
inline constexpr int kMaxUniverse = 31;

/// A canonical set partition of positions 0..t-1 in restricted-growth form:
/// digit[0] == 0 and digit[i] <= 1 + max(digit[0..i-1]). Equal partitions
/// have equal encodings, so this is directly usable as a hash key.
class Partition {
 public:
  Partition() = default;  // partition of the empty universe

  /// Canonicalize an arbitrary block labeling of positions 0..t-1.
  static Partition from_labels(std::span<const int> raw);

  /// The all-singletons partition (lattice bottom).
  static Partition singletons(int t);

  int size() const { return size_; }
  int block_count() const { return size_ == 0 ? 0 : 1 + max_digit_; }
  std::uint8_t digit(int pos) const { return digits_[pos]; }

  bool block_is_singleton(int pos) const;

  /// Positions of the block containing `pos`, as a bitmask.
  std::uint32_t block_mask(int pos) const;

  /// Grow the universe by one position at index `pos` (existing positions at
  /// or after `pos` shift up); the new position forms a singleton block.
  Partition with_singleton_inserted(int pos) const;

  /// Merge the blocks containing positions i and j.
  Partition with_blocks_merged(int i, int j) const;

  /// Shrink the universe by removing position `pos`; its block keeps the
  /// remaining members (and disappears if `pos` was a singleton).
  Partition with_position_removed(int pos) const;

  /// Variable-width packing of the restricted-growth digits. Fits any
  /// partition of up to 31 positions in 124 bits. Unique per (size, digits).
  std::array<std::uint64_t, 2> packed() const;

  bool operator==(const Partition& o) const {
    return size_ == o.size_ && digits_ == o.digits_;
  }

  /// Lexicographic order on the digit string; the deterministic tie-break
  /// used whenever rows of equal weight must be ordered.
  bool lex_less(const Partition& o) const;

 private:
  std::uint8_t size_ = 0;
  std::uint8_t max_digit_ = 0;
  std::array<std::uint8_t, kMaxUniverse> digits_{};
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const;
};

/// Finest common coarsening of two partitions of the same universe.
/// Commutative, associative, idempotent; singletons are neutral and the
/// single-block partition is absorbing.
Partition lattice_join(const Partition& p, const Partition& q);

/// True when the partition has at most one block.
bool is_top(const Partition& p);

/// All partitions of a t-element universe in lexicographic restricted-growth
/// order. Guarded to t <= 12 (Bell(12) = 4213597); oracle-scale only.
std::vector<Partition> enumerate_partitions(int t);

}  // namespace twr
