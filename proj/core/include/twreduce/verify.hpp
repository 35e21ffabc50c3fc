#pragma once

#include <cstdint>
#include <string>

namespace twr {

/// Oracle-backed verification suites, compiled into the product so CI and
/// users run identical checks (`verify` subcommand).
struct VerifyOptions {
  bool suite_reduce = true;
  bool suite_hamilton = true;
  bool suite_steiner = true;
  std::uint64_t trials = 200;
  std::uint64_t seed = 1;
};

struct VerifyOutcome {
  bool passed = false;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string json;  // deterministic report (timing fields aside)
};

VerifyOutcome run_verify(const VerifyOptions& options);

}  // namespace twr
