#include "twreduce/stats_json.hpp"

#include <json.hpp>

namespace twr {

namespace {

using nlohmann::json;

json run_stats_to_json(const RunStats& s) {
  return json{
      {"nodes", s.nodes},
      {"width", s.width},
      {"max_node_rows", s.max_node_rows},
      {"max_live_rows", s.max_live_rows},
      {"max_slice_rows", s.max_slice_rows},
      {"max_slice_rows_pre_reduce", s.max_slice_rows_pre_reduce},
      {"reduce_calls", s.reduce_calls},
      {"reduce_skipped_slices", s.reduce_skipped_slices},
      {"rows_eliminated", s.rows_eliminated},
      {"reduce",
       {{"rows_in", s.reduce_total.rows_in},
        {"rows_out", s.reduce_total.rows_out},
        {"cols", s.reduce_total.cols},
        {"xor_word_ops", s.reduce_total.xor_word_ops},
        {"nanos", s.reduce_total.nanos}}},
      {"wall_nanos", s.wall_nanos},
      {"peak_memory_bytes_estimate", s.peak_memory_bytes_estimate},
  };
}

void strip_timing(json& j) {
  if (j.is_object()) {
    j.erase("nanos");
    j.erase("wall_nanos");
    for (auto& [key, value] : j.items()) strip_timing(value);
  } else if (j.is_array()) {
    for (auto& value : j) strip_timing(value);
  }
}

bool require_uint(const json& j, const char* key, std::vector<std::string>& errors,
                  const std::string& where) {
  if (!j.contains(key)) {
    errors.push_back(where + ": missing field `" + key + "`");
    return false;
  }
  if (!j.at(key).is_number_unsigned()) {
    errors.push_back(where + ": field `" + key + "` must be a nonnegative integer");
    return false;
  }
  return true;
}

}  // namespace

std::string policy_name(const ReducePolicy& policy) {
  switch (policy.kind) {
    case ReducePolicyKind::Never:
      return "never";
    case ReducePolicyKind::Always:
      return "always";
    case ReducePolicyKind::Threshold:
      return "threshold";
  }
  return "never";
}

std::string solve_report_json(const SolveReport& report) {
  json j;
  j["schema_version"] = "v1";
  j["problem"] = report.problem;
  j["mode"] = report.mode;
  j["policy"] = report.policy;
  if (report.decision) {
    j["answer"] = report.answer_weight.has_value() ? "yes" : "no";
  } else if (report.answer_weight.has_value()) {
    j["answer"] = *report.answer_weight;
  } else {
    j["answer"] = "infeasible";
  }
  j["stats"] = run_stats_to_json(report.stats);
  return j.dump(2) + "\n";
}

std::string stats_schema_json() {
  json reduce_props = {
      {"rows_in", "uint"}, {"rows_out", "uint"},     {"cols", "uint"},
      {"nanos", "uint"},   {"xor_word_ops", "uint"},
  };
  json stats_props = {
      {"nodes", "uint"},
      {"width", "uint"},
      {"max_node_rows", "uint"},
      {"max_live_rows", "uint"},
      {"max_slice_rows", "uint"},
      {"max_slice_rows_pre_reduce", "uint"},
      {"reduce_calls", "uint"},
      {"reduce_skipped_slices", "uint"},
      {"rows_eliminated", "uint"},
      {"reduce", {{"type", "object"}, {"properties", reduce_props}}},
      {"wall_nanos", "uint"},
      {"peak_memory_bytes_estimate", "uint"},
  };
  json schema = {
      {"schema_version", "v1"},
      {"title", "twreduce solve output"},
      {"type", "object"},
      {"timing_fields", json::array({"nanos", "wall_nanos"})},
      {"properties",
       {{"schema_version", "string"},
        {"problem", "string"},
        {"mode", "string"},
        {"policy", "string"},
        {"answer", "uint|yes|no|infeasible"},
        {"stats", {{"type", "object"}, {"properties", stats_props}}}}},
  };
  return schema.dump(2) + "\n";
}

std::vector<std::string> validate_solve_json(std::string_view text) {
  std::vector<std::string> errors;
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    errors.push_back("document: not valid JSON");
    return errors;
  }
  if (!j.is_object()) {
    errors.push_back("document: not a JSON object");
    return errors;
  }
  for (const char* key : {"schema_version", "problem", "mode", "policy"}) {
    if (!j.contains(key) || !j.at(key).is_string()) {
      errors.push_back(std::string("document: missing string field `") + key + "`");
    }
  }
  if (j.contains("schema_version") && j.at("schema_version") != "v1") {
    errors.push_back("document: unsupported schema_version");
  }
  if (!j.contains("answer")) {
    errors.push_back("document: missing field `answer`");
  } else {
    const json& a = j.at("answer");
    const bool ok = a.is_number_unsigned() ||
                    (a.is_string() && (a == "yes" || a == "no" || a == "infeasible"));
    if (!ok) errors.push_back("document: `answer` must be uint, yes, no or infeasible");
  }
  if (!j.contains("stats") || !j.at("stats").is_object()) {
    errors.push_back("document: missing object field `stats`");
    return errors;
  }
  const json& s = j.at("stats");
  for (const char* key :
       {"nodes", "width", "max_node_rows", "max_live_rows", "max_slice_rows",
        "max_slice_rows_pre_reduce", "reduce_calls", "reduce_skipped_slices",
        "rows_eliminated", "wall_nanos", "peak_memory_bytes_estimate"}) {
    require_uint(s, key, errors, "stats");
  }
  if (!s.contains("reduce") || !s.at("reduce").is_object()) {
    errors.push_back("stats: missing object field `reduce`");
    return errors;
  }
  const json& r = s.at("reduce");
  for (const char* key : {"rows_in", "rows_out", "cols", "xor_word_ops", "nanos"}) {
    require_uint(r, key, errors, "stats.reduce");
  }
  return errors;
}

std::string strip_timing_fields(std::string_view text) {
  json j = json::parse(text);
  strip_timing(j);
  return j.dump(2) + "\n";
}

}  // namespace twr
