#include "twreduce/gf2.hpp"

#include <bit>

namespace twr {

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64) {
  if (cols > (1ULL << 30)) {
    throw ContractError("Gf2Matrix: column count exceeds 2^30 guard");
  }
  if (words_per_row_ == 0) words_per_row_ = 1;
  words_.assign(rows_ * words_per_row_, 0);
}

RowBasisResult gaussian_row_basis(Gf2Matrix& m) {
  RowBasisResult res;
  const std::size_t w = m.words_per_row();
  // pivot row index -> its pivot column (lowest set bit after reduction)
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint64_t* row = m.row(r);
    for (std::size_t k = 0; k < pivot_rows.size(); ++k) {
      const std::size_t c = pivot_cols[k];
      if ((row[c >> 6] >> (c & 63)) & 1) {
        const std::uint64_t* prow = m.row(pivot_rows[k]);
        for (std::size_t i = 0; i < w; ++i) row[i] ^= prow[i];
        res.xor_word_ops += w;
      }
    }
    std::size_t lead = m.cols();
    for (std::size_t i = 0; i < w; ++i) {
      if (row[i] != 0) {
        lead = (i << 6) + static_cast<std::size_t>(std::countr_zero(row[i]));
        break;
      }
    }
    if (lead < m.cols()) {
      res.kept.push_back(r);
      pivot_rows.push_back(r);
      pivot_cols.push_back(lead);
    }
  }
  return res;
}

}  // namespace twr
