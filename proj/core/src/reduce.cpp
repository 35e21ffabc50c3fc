#include "twreduce/reduce.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <functional>
#include <string>

namespace twr {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t nanos_since(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
          .count());
}

void sort_rows(std::vector<TableRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const TableRow& a, const TableRow& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.part.lex_less(b.part);
  });
}

// Collapse a slice over the empty universe: one possible partition, min wins.
ReduceResult reduce_trivial_universe(std::vector<TableRow> rows) {
  ReduceResult res;
  res.stats.rows_in = rows.size();
  res.stats.cols = 0;
  if (!rows.empty()) {
    TableRow best = rows.front();
    for (const TableRow& r : rows) {
      if (r.weight < best.weight) best = r;
    }
    res.rows.push_back(best);
  }
  res.stats.rows_out = res.rows.size();
  return res;
}

// Writes the cut-matrix row of p: one set bit per subset S that is a union
// of blocks with the block of position 0 on the S side. Enumerates the
// 2^(blocks-1) such subsets by gray code, one XOR per column.
void fill_cut_row(Gf2Matrix& m, std::size_t row, const Partition& p) {
  const int t = p.size();
  const int nblocks = p.block_count();
  std::array<std::uint32_t, kMaxUniverse> other_blocks{};
  int k = 0;
  std::uint32_t b0 = 0;
  {
    std::array<std::uint32_t, kMaxUniverse> mask{};
    for (int i = 0; i < t; ++i) mask[p.digit(i)] |= 1u << i;
    b0 = mask[p.digit(0)];
    for (int b = 0; b < nblocks; ++b) {
      if (mask[b] != b0) other_blocks[k++] = mask[b];
    }
  }
  std::uint32_t cur = b0;
  m.set(row, cur >> 1);
  const std::uint64_t combos = 1ULL << k;
  for (std::uint64_t g = 1; g < combos; ++g) {
    cur ^= other_blocks[std::countr_zero(g)];
    m.set(row, cur >> 1);
  }
}

ReduceResult run_basis(std::vector<TableRow> rows, std::size_t cols,
                       const std::function<void(Gf2Matrix&, std::size_t,
                                                const Partition&)>& fill,
                       std::uint64_t out_cap, Clock::time_point start) {
  ReduceResult res;
  res.stats.rows_in = rows.size();
  res.stats.cols = cols;
  sort_rows(rows);
  Gf2Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) fill(m, r, rows[r].part);
  RowBasisResult basis = gaussian_row_basis(m);
  res.stats.xor_word_ops = basis.xor_word_ops;
  res.rows.reserve(basis.kept.size());
  for (std::size_t idx : basis.kept) res.rows.push_back(rows[idx]);
  res.stats.rows_out = res.rows.size();
  if (res.stats.rows_out > out_cap) {
    // the row space cannot exceed the column space; reaching this line means
    // the elimination itself is broken
    throw ContractError("reduce: output exceeded its size cap");
  }
  res.stats.nanos = nanos_since(start);
  return res;
}

void require_perfect_matching(const TableRow& row) {
  const Partition& p = row.part;
  for (int i = 0; i < p.size(); ++i) {
    if (std::popcount(p.block_mask(i)) != 2) {
      throw ContractError("reduce_matchings: partition is not a perfect matching");
    }
  }
}

std::array<std::int8_t, kMaxUniverse> partner_array(const Partition& p) {
  std::array<std::int8_t, kMaxUniverse> partner{};
  partner.fill(-1);
  for (int i = 0; i < p.size(); ++i) {
    const std::uint32_t others = p.block_mask(i) & ~(1u << i);
    if (std::popcount(others) == 1) {
      partner[i] = static_cast<std::int8_t>(std::countr_zero(others));
    }
  }
  return partner;
}

bool walk_is_single_cycle(const std::array<std::int8_t, kMaxUniverse>& pp,
                          const std::array<std::int8_t, kMaxUniverse>& qq,
                          int t) {
  int cur = 0;
  int visited = 0;
  do {
    cur = pp[cur];
    cur = qq[cur];
    visited += 2;
  } while (cur != 0);
  return visited == t;
}

}  // namespace

ReduceStats& ReduceStats::operator+=(const ReduceStats& o) {
  rows_in += o.rows_in;
  rows_out += o.rows_out;
  cols += o.cols;
  xor_word_ops += o.xor_word_ops;
  nanos += o.nanos;
  return *this;
}

std::vector<bool> cut_row_bits(const Partition& p) {
  const int t = p.size();
  if (t < 1 || t > kMaxCutUniverse) {
    throw ContractError(
        "cut_row: universe size outside [1, 21]; raise kMaxCutUniverse to go "
        "further");
  }
  Gf2Matrix m(1, 1ULL << (t - 1));
  fill_cut_row(m, 0, p);
  std::vector<bool> bits(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) bits[c] = m.get(0, c);
  return bits;
}

ReduceResult reduce(std::vector<TableRow> rows, int t) {
  const auto start = Clock::now();
  if (t < 0) throw ContractError("reduce: negative universe size");
  if (t == 0) return reduce_trivial_universe(std::move(rows));
  if (t > kMaxCutUniverse) {
    throw ContractError(
        "reduce: universe size exceeds the 2^20-column guard; raise "
        "kMaxCutUniverse to go further");
  }
  if (rows.empty()) {
    ReduceResult res;
    res.stats.cols = 1ULL << (t - 1);
    return res;
  }
  for (const TableRow& r : rows) {
    if (r.part.size() != t) {
      throw ContractError("reduce: row universe size mismatch");
    }
    if (r.weight == kInfiniteWeight) {
      throw ContractError("reduce: infinity-weight row");
    }
  }
  return run_basis(
      std::move(rows), 1ULL << (t - 1),
      [](Gf2Matrix& m, std::size_t r, const Partition& p) { fill_cut_row(m, r, p); },
      1ULL << (t - 1), start);
}

bool fits_cycle(const Partition& p, const Partition& q) {
  const int t = p.size();
  if (t != q.size() || (t & 1) != 0 || t == 0) {
    throw ContractError("fits_cycle: need matchings of one even universe");
  }
  const auto pp = partner_array(p);
  const auto qq = partner_array(q);
  for (int i = 0; i < t; ++i) {
    if (pp[i] < 0 || qq[i] < 0) {
      throw ContractError("fits_cycle: argument is not a perfect matching");
    }
  }
  return walk_is_single_cycle(pp, qq, t);
}

std::vector<Partition> enumerate_perfect_matchings(int t) {
  if (t < 0 || (t & 1) != 0 || t > kMaxMatchingUniverse) {
    throw ContractError(
        "enumerate_perfect_matchings: need even t in [0, 12]; raise "
        "kMaxMatchingUniverse to go further");
  }
  std::vector<Partition> out;
  if (t == 0) {
    out.push_back(Partition{});
    return out;
  }
  std::array<int, kMaxUniverse> labels{};
  std::uint32_t used = 0;
  auto rec = [&](auto&& self, int next_block) -> void {
    if (next_block * 2 == t) {
      out.push_back(Partition::from_labels(std::span<const int>(labels.data(), t)));
      return;
    }
    const int first = std::countr_zero(~used);
    used |= 1u << first;
    labels[first] = next_block;
    for (int second = first + 1; second < t; ++second) {
      if (used & (1u << second)) continue;
      used |= 1u << second;
      labels[second] = next_block;
      self(self, next_block + 1);
      used &= ~(1u << second);
    }
    used &= ~(1u << first);
  };
  rec(rec, 0);
  return out;
}

ReduceResult reduce_matchings(std::vector<TableRow> rows, int t) {
  const auto start = Clock::now();
  if (t < 0 || (t & 1) != 0) {
    throw ContractError("reduce_matchings: universe size must be even");
  }
  if (t == 0) return reduce_trivial_universe(std::move(rows));
  if (t > kMaxMatchingUniverse) {
    throw ContractError(
        "reduce_matchings: universe size exceeds the all-matchings column "
        "guard; fall back to reduce() or raise kMaxMatchingUniverse");
  }
  const std::vector<Partition> cols = enumerate_perfect_matchings(t);
  if (rows.empty()) {
    ReduceResult res;
    res.stats.cols = cols.size();
    return res;
  }
  for (const TableRow& r : rows) {
    if (r.part.size() != t) {
      throw ContractError("reduce_matchings: row universe size mismatch");
    }
    require_perfect_matching(r);
  }
  std::vector<std::array<std::int8_t, kMaxUniverse>> col_partners;
  col_partners.reserve(cols.size());
  for (const Partition& c : cols) col_partners.push_back(partner_array(c));
  const std::uint64_t cap = 1ULL << (t / 2);
  return run_basis(
      std::move(rows), cols.size(),
      [&col_partners, t](Gf2Matrix& m, std::size_t r, const Partition& p) {
        const auto pp = partner_array(p);
        for (std::size_t c = 0; c < col_partners.size(); ++c) {
          if (walk_is_single_cycle(pp, col_partners[c], t)) m.set(r, c);
        }
      },
      cap, start);
}

}  // namespace twr
