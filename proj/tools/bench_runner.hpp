#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twreduce/policy.hpp"

namespace twr::bench {

struct BenchOptions {
  std::string problem = "hamilton";  // hamilton | tsp | steiner
  std::vector<std::string> policies = {"never", "always"};
  std::uint64_t threshold_rows = 0;  // 0 = instance default

  // generated families
  std::string family;  // "ktree" | "cycle" | "" (use dir)
  int count = 1;
  int n = 32;
  int width = 4;
  int keep_permille = 1000;
  std::uint64_t max_weight = 10;
  int terminals = 3;
  std::uint64_t seed = 1;

  // directory of instances (*.gr with optional matching .td / .terminals)
  std::string dir;

  std::uint64_t timeout_ms = 0;
  std::string format = "csv";  // csv | json
  int threads = 0;             // 0 = TWREDUCE_THREADS or hardware
};

struct BenchResult {
  std::string report;    // csv or json text
  int instances_run = 0;
  int errors = 0;
};

BenchResult run_bench(const BenchOptions& options);

}  // namespace twr::bench
