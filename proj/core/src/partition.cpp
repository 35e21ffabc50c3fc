#include "twreduce/partition.hpp"

#include <algorithm>
#include <bit>

namespace twr {

namespace {

void check_size(int t) {
  if (t < 0 || t > kMaxUniverse) {
    throw ContractError("partition universe size out of range [0, 31]");
  }
}

}  // namespace

Partition Partition::from_labels(std::span<const int> raw) {
  check_size(static_cast<int>(raw.size()));
  Partition p;
  p.size_ = static_cast<std::uint8_t>(raw.size());
  // first-use relabeling: block ids appear in increasing position order
  std::array<int, kMaxUniverse> seen{};
  int next = 0;
  for (int i = 0; i < p.size_; ++i) {
    int found = -1;
    for (int j = 0; j < next; ++j) {
      if (seen[j] == raw[i]) {
        found = j;
        break;
      }
    }
    if (found < 0) {
      seen[next] = raw[i];
      found = next++;
    }
    p.digits_[i] = static_cast<std::uint8_t>(found);
  }
  p.max_digit_ = p.size_ == 0 ? 0 : static_cast<std::uint8_t>(next - 1);
  return p;
}

Partition Partition::singletons(int t) {
  check_size(t);
  Partition p;
  p.size_ = static_cast<std::uint8_t>(t);
  for (int i = 0; i < t; ++i) p.digits_[i] = static_cast<std::uint8_t>(i);
  p.max_digit_ = t == 0 ? 0 : static_cast<std::uint8_t>(t - 1);
  return p;
}

bool Partition::block_is_singleton(int pos) const {
  const std::uint8_t b = digits_[pos];
  for (int i = 0; i < size_; ++i) {
    if (i != pos && digits_[i] == b) return false;
  }
  return true;
}

std::uint32_t Partition::block_mask(int pos) const {
  const std::uint8_t b = digits_[pos];
  std::uint32_t m = 0;
  for (int i = 0; i < size_; ++i) {
    if (digits_[i] == b) m |= 1u << i;
  }
  return m;
}

Partition Partition::with_singleton_inserted(int pos) const {
  if (pos < 0 || pos > size_) throw ContractError("insert position out of range");
  check_size(size_ + 1);
  std::array<int, kMaxUniverse> raw{};
  for (int i = 0; i < pos; ++i) raw[i] = digits_[i];
  raw[pos] = kMaxUniverse;  // fresh label, relabeled by from_labels
  for (int i = pos; i < size_; ++i) raw[i + 1] = digits_[i];
  return from_labels(std::span<const int>(raw.data(), size_ + 1));
}

Partition Partition::with_blocks_merged(int i, int j) const {
  if (i < 0 || i >= size_ || j < 0 || j >= size_) {
    throw ContractError("merge position out of range");
  }
  std::array<int, kMaxUniverse> raw{};
  const std::uint8_t bi = digits_[i], bj = digits_[j];
  for (int k = 0; k < size_; ++k) {
    raw[k] = digits_[k] == bj ? bi : digits_[k];
  }
  return from_labels(std::span<const int>(raw.data(), size_));
}

Partition Partition::with_position_removed(int pos) const {
  if (pos < 0 || pos >= size_) throw ContractError("remove position out of range");
  std::array<int, kMaxUniverse> raw{};
  int k = 0;
  for (int i = 0; i < size_; ++i) {
    if (i != pos) raw[k++] = digits_[i];
  }
  return from_labels(std::span<const int>(raw.data(), k));
}

std::array<std::uint64_t, 2> Partition::packed() const {
  // digit i needs bit_width(i) bits since digit[i] <= i; 124 bits for t = 31
  std::array<std::uint64_t, 2> out{0, 0};
  int off = 0;
  for (int i = 1; i < size_; ++i) {
    const int w = std::bit_width(static_cast<unsigned>(i));
    const std::uint64_t d = digits_[i];
    out[off >> 6] |= d << (off & 63);
    const int spill = (off & 63) + w - 64;
    if (spill > 0) out[1] |= d >> (w - spill);
    off += w;
  }
  return out;
}

bool Partition::lex_less(const Partition& o) const {
  const int n = std::min(size_, o.size_);
  for (int i = 0; i < n; ++i) {
    if (digits_[i] != o.digits_[i]) return digits_[i] < o.digits_[i];
  }
  return size_ < o.size_;
}

std::size_t PartitionHash::operator()(const Partition& p) const {
  const auto w = p.packed();
  std::uint64_t h = w[0] ^ (w[1] * 0x9e3779b97f4a7c15ULL) ^
                    (static_cast<std::uint64_t>(p.size()) << 56);
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return static_cast<std::size_t>(h);
}

Partition lattice_join(const Partition& p, const Partition& q) {
  if (p.size() != q.size()) {
    throw ContractError("lattice_join: universe size mismatch");
  }
  const int t = p.size();
  std::array<int, kMaxUniverse> parent{};
  for (int i = 0; i < t; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  // union consecutive members of each block, in both partitions
  for (const Partition* part : {&p, &q}) {
    std::array<int, kMaxUniverse> last_of_block;
    last_of_block.fill(-1);
    for (int i = 0; i < t; ++i) {
      const int b = part->digit(i);
      if (last_of_block[b] >= 0) unite(last_of_block[b], i);
      last_of_block[b] = i;
    }
  }
  std::array<int, kMaxUniverse> raw{};
  for (int i = 0; i < t; ++i) raw[i] = find(i);
  return Partition::from_labels(std::span<const int>(raw.data(), t));
}

bool is_top(const Partition& p) { return p.block_count() <= 1; }

std::vector<Partition> enumerate_partitions(int t) {
  if (t < 0 || t > 12) {
    throw ContractError("enumerate_partitions: t out of oracle range [0, 12]");
  }
  std::vector<Partition> out;
  if (t == 0) {
    out.push_back(Partition{});
    return out;
  }
  std::vector<int> a(t, 0);
  for (;;) {
    out.push_back(Partition::from_labels(a));
    // advance to the next restricted-growth string
    int i = t - 1;
    for (; i >= 1; --i) {
      int mx = 0;
      for (int j = 0; j < i; ++j) mx = std::max(mx, a[j]);
      if (a[i] <= mx) break;  // a[i] may grow to mx + 1
      a[i] = 0;
    }
    if (i < 1) break;
    ++a[i];
    for (int j = i + 1; j < t; ++j) a[j] = 0;
  }
  return out;
}

}  // namespace twr
