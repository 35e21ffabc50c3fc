#pragma once

#include <cstdint>

#include "twreduce/decomposition.hpp"
#include "twreduce/graph.hpp"

namespace twr {

/// Deterministic splitmix64 generator. The standard library engines are
/// portable but its distributions are not; every random draw in the project
/// goes through this so identical seeds give identical bytes everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);

  /// Uniform in [lo, hi] inclusive.
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi);

  bool chance(std::uint64_t numerator, std::uint64_t denominator);

 private:
  std::uint64_t state_;
};

struct GeneratedInstance {
  Graph graph;
  TreeDecomposition td;
};

/// Random connected subgraph of a random k-tree on n vertices, with the
/// k-tree's width-k decomposition. Tree edges of the k-tree skeleton are
/// always kept so the result stays connected; the remaining edges are kept
/// with probability keep_permille/1000. Weights uniform in [1, max_weight].
GeneratedInstance random_partial_ktree(int n, int k, int keep_permille,
                                       Weight max_weight, std::uint64_t seed);

/// Cycle graph C_n with its width-2 path decomposition (bags {0, i, i+1}).
GeneratedInstance cycle_instance(int n);

/// Erdos-Renyi-style G(n, m) with weights uniform in [1, max_weight].
Graph random_graph(int n, int m, Weight max_weight, std::uint64_t seed);

}  // namespace twr
