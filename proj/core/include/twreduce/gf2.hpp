#pragma once

#include <cstdint>
#include <vector>

#include "twreduce/common.hpp"

namespace twr {

/// Dense bit-packed matrix over GF(2).
class Gf2Matrix {
 public:
  Gf2Matrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_per_row_; }

  void set(std::size_t r, std::size_t c) {
    words_[r * words_per_row_ + (c >> 6)] |= 1ULL << (c & 63);
  }
  bool get(std::size_t r, std::size_t c) const {
    return (words_[r * words_per_row_ + (c >> 6)] >> (c & 63)) & 1;
  }

  std::uint64_t* row(std::size_t r) { return words_.data() + r * words_per_row_; }
  const std::uint64_t* row(std::size_t r) const {
    return words_.data() + r * words_per_row_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> words_;
};

struct RowBasisResult {
  /// Indices of kept rows, in the caller's row order. Kept rows are
  /// independent, span the row space, and earlier rows are always preferred.
  std::vector<std::size_t> kept;
  std::uint64_t xor_word_ops = 0;
};

/// Row-echelon elimination that keeps the lexicographically earliest row
/// basis. The caller pre-sorts rows into preference order; the matrix is
/// consumed (rows are rewritten in place).
RowBasisResult gaussian_row_basis(Gf2Matrix& m);

}  // namespace twr
