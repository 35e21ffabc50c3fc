#include "twreduce/weighted_table.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <vector>

namespace twr {

void WeightedTable::upsert_min(Label label, const Partition& p, Weight w) {
  assert(w != kInfiniteWeight);
  auto& slice = slices_[label];
  auto [it, inserted] = slice.try_emplace(p, w);
  if (!inserted && w < it->second) it->second = w;
}

const WeightedTable::Slice* WeightedTable::find_slice(Label label) const {
  auto it = slices_.find(label);
  return it == slices_.end() ? nullptr : &it->second;
}

std::size_t WeightedTable::total_rows() const {
  std::size_t n = 0;
  for (const auto& [label, slice] : slices_) n += slice.size();
  return n;
}

std::size_t WeightedTable::max_slice_rows() const {
  std::size_t n = 0;
  for (const auto& [label, slice] : slices_) n = std::max(n, slice.size());
  return n;
}

namespace {

char base32_digit(int d) { return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10); }

}  // namespace

std::string WeightedTable::dump() const {
  struct Line {
    Label label;
    Partition part;
    Weight w;
  };
  std::vector<Line> lines;
  for (const auto& [label, slice] : slices_) {
    for (const auto& [p, w] : slice) lines.push_back({label, p, w});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (a.label != b.label) return a.label < b.label;
    return a.part.lex_less(b.part);
  });
  std::ostringstream os;
  for (const auto& l : lines) {
    os << l.label << ' ';
    if (l.part.size() == 0) {
      os << '-';
    } else {
      for (int i = 0; i < l.part.size(); ++i) os << base32_digit(l.part.digit(i));
    }
    os << ' ' << l.w << '\n';
  }
  return os.str();
}

WeightedTable tbl_union(const WeightedTable& a, const WeightedTable& b) {
  WeightedTable out = a;
  for (const auto& [label, slice] : b.slices()) {
    for (const auto& [p, w] : slice) out.upsert_min(label, p, w);
  }
  return out;
}

WeightedTable tbl_insert(const WeightedTable& a,
                         const std::function<InsertSpec(Label)>& spec) {
  WeightedTable out;
  for (const auto& [label, slice] : a.slices()) {
    const InsertSpec s = spec(label);
    for (const auto& [p, w] : slice) {
      if (s.part_pos < 0) {
        out.upsert_min(s.label, p, w);
      } else {
        out.upsert_min(s.label, p.with_singleton_inserted(s.part_pos), w);
      }
    }
  }
  return out;
}

WeightedTable tbl_insert(const WeightedTable& a, int pos) {
  return tbl_insert(a, [pos](Label l) { return InsertSpec{l, pos}; });
}

WeightedTable tbl_glue(
    const WeightedTable& a,
    const std::function<std::optional<std::pair<int, int>>(Label)>& positions,
    Weight edge_weight) {
  WeightedTable out;
  for (const auto& [label, slice] : a.slices()) {
    const auto pos = positions(label);
    if (!pos) continue;
    for (const auto& [p, w] : slice) {
      out.upsert_min(label, p.with_blocks_merged(pos->first, pos->second),
                     checked_add(w, edge_weight));
    }
  }
  return out;
}

WeightedTable tbl_glue(const WeightedTable& a, int i, int j, Weight edge_weight) {
  return tbl_glue(
      a, [i, j](Label) { return std::make_optional(std::make_pair(i, j)); },
      edge_weight);
}

WeightedTable tbl_project(
    const WeightedTable& a, const std::function<ProjectSpec(Label)>& spec,
    const std::function<void(Label, const Partition&, Weight)>& on_dropped) {
  WeightedTable out;
  for (const auto& [label, slice] : a.slices()) {
    const ProjectSpec s = spec(label);
    for (const auto& [p, w] : slice) {
      if (!s.part_pos) {
        out.upsert_min(s.label, p, w);
        continue;
      }
      const int pos = *s.part_pos;
      if (s.must_connect && p.block_is_singleton(pos)) {
        if (on_dropped) on_dropped(label, p, w);
        continue;
      }
      out.upsert_min(s.label, p.with_position_removed(pos), w);
    }
  }
  return out;
}

WeightedTable tbl_project(const WeightedTable& a, int pos, bool must_connect) {
  return tbl_project(a, [pos, must_connect](Label l) {
    return ProjectSpec{l, pos, must_connect};
  });
}

WeightedTable tbl_join(
    const WeightedTable& a, const WeightedTable& b,
    const std::function<std::optional<Label>(Label, Label)>& combine,
    Weight offset) {
  WeightedTable out;
  for (const auto& [la, sa] : a.slices()) {
    for (const auto& [lb, sb] : b.slices()) {
      const auto lc = combine(la, lb);
      if (!lc) continue;
      for (const auto& [pa, wa] : sa) {
        for (const auto& [pb, wb] : sb) {
          const Weight w = checked_add(wa, wb) - offset;
          out.upsert_min(*lc, lattice_join(pa, pb), w);
        }
      }
    }
  }
  return out;
}

WeightedTable tbl_join(const WeightedTable& a, const WeightedTable& b) {
  WeightedTable out;
  for (const auto& [label, sa] : a.slices()) {
    const auto* sb = b.find_slice(label);
    if (!sb) continue;
    for (const auto& [pa, wa] : sa) {
      for (const auto& [pb, wb] : *sb) {
        out.upsert_min(label, lattice_join(pa, pb), checked_add(wa, wb));
      }
    }
  }
  return out;
}

}  // namespace twr
