#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twreduce/policy.hpp"

namespace twr {

/// One solver invocation, ready for serialization.
struct SolveReport {
  std::string problem;  // "hamilton" | "steiner"
  std::string mode;     // "decision" | "tsp" | "min-weight"
  std::string policy;   // "never" | "always" | "threshold"
  bool decision = false;                // answer is yes/no instead of weight
  std::optional<Weight> answer_weight;  // nullopt = infeasible / no
  RunStats stats;
};

/// Deterministic JSON document (keys sorted, stable integers). Timing fields
/// (`nanos`, `wall_nanos`) are the only nondeterministic values.
std::string solve_report_json(const SolveReport& report);

std::string policy_name(const ReducePolicy& policy);

/// The versioned (v1) schema describing solve output; `schema` subcommand.
std::string stats_schema_json();

/// Checks a solve document against the v1 schema. Returns human-readable
/// problems, empty when the document validates.
std::vector<std::string> validate_solve_json(std::string_view text);

/// Removes timing fields recursively and re-serializes; byte-comparable
/// determinism checks go through this.
std::string strip_timing_fields(std::string_view text);

}  // namespace twr
