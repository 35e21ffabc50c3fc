#include "bench_runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <sstream>
#include <thread>

#include "twreduce/generator.hpp"
#include "twreduce/hamilton.hpp"
#include "twreduce/oracles.hpp"
#include "twreduce/steiner.hpp"

namespace twr::bench {

namespace {

using nlohmann::json;

struct Task {
  std::string instance_name;
  Graph graph;
  TreeDecomposition td;
  std::vector<int> terminals;
  ReducePolicy policy;
  std::string policy_name;
};

struct Record {
  std::string instance;
  std::string policy;
  std::string problem;
  std::string status;  // ok | infeasible | timeout | error
  std::string answer;
  int n = 0;
  int m = 0;
  RunStats stats;
  std::string error;
};

ReducePolicy make_policy(const std::string& name, std::uint64_t threshold_rows) {
  if (name == "never") return ReducePolicy::never();
  if (name == "always") return ReducePolicy::always();
  if (name == "threshold") return ReducePolicy::threshold(threshold_rows);
  throw ParseError("unknown policy `" + name + "`");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int pool_size(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TWREDUCE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<std::string> csv_columns() {
  return {"instance",
          "policy",
          "problem",
          "status",
          "answer",
          "n",
          "m",
          "width",
          "nodes",
          "max_node_rows",
          "max_live_rows",
          "max_slice_rows",
          "max_slice_rows_pre_reduce",
          "reduce_calls",
          "reduce_skipped_slices",
          "rows_eliminated",
          "reduce_rows_in",
          "reduce_rows_out",
          "reduce_cols",
          "reduce_xor_word_ops",
          "reduce_nanos",
          "wall_nanos",
          "peak_memory_bytes_estimate",
          "bell_width_universe"};
}

json record_to_json(const Record& r, std::uint64_t bell_naive) {
  return json{{"instance", r.instance},
              {"policy", r.policy},
              {"problem", r.problem},
              {"status", r.status},
              {"answer", r.answer},
              {"n", r.n},
              {"m", r.m},
              {"width", r.stats.width},
              {"nodes", r.stats.nodes},
              {"max_node_rows", r.stats.max_node_rows},
              {"max_live_rows", r.stats.max_live_rows},
              {"max_slice_rows", r.stats.max_slice_rows},
              {"max_slice_rows_pre_reduce", r.stats.max_slice_rows_pre_reduce},
              {"reduce_calls", r.stats.reduce_calls},
              {"reduce_skipped_slices", r.stats.reduce_skipped_slices},
              {"rows_eliminated", r.stats.rows_eliminated},
              {"reduce_rows_in", r.stats.reduce_total.rows_in},
              {"reduce_rows_out", r.stats.reduce_total.rows_out},
              {"reduce_cols", r.stats.reduce_total.cols},
              {"reduce_xor_word_ops", r.stats.reduce_total.xor_word_ops},
              {"reduce_nanos", r.stats.reduce_total.nanos},
              {"wall_nanos", r.stats.wall_nanos},
              {"peak_memory_bytes_estimate", r.stats.peak_memory_bytes_estimate},
              {"bell_width_universe", bell_naive},
              {"error", r.error}};
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

void append_csv(std::ostringstream& os, const Record& r, std::uint64_t bell_naive) {
  os << csv_escape(r.instance) << ',' << r.policy << ',' << r.problem << ','
     << r.status << ',' << r.answer << ',' << r.n << ',' << r.m << ','
     << r.stats.width << ',' << r.stats.nodes << ',' << r.stats.max_node_rows
     << ',' << r.stats.max_live_rows << ',' << r.stats.max_slice_rows << ','
     << r.stats.max_slice_rows_pre_reduce << ',' << r.stats.reduce_calls << ','
     << r.stats.reduce_skipped_slices << ',' << r.stats.rows_eliminated << ','
     << r.stats.reduce_total.rows_in << ',' << r.stats.reduce_total.rows_out
     << ',' << r.stats.reduce_total.cols << ','
     << r.stats.reduce_total.xor_word_ops << ',' << r.stats.reduce_total.nanos
     << ',' << r.stats.wall_nanos << ',' << r.stats.peak_memory_bytes_estimate
     << ',' << bell_naive << '\n';
}

Record run_task(const BenchOptions& options, const Task& task) {
  Record rec;
  rec.instance = task.instance_name;
  rec.policy = task.policy_name;
  rec.problem = options.problem;
  rec.n = task.graph.vertex_count();
  rec.m = task.graph.edge_count();
  try {
    const auto nd = nicify(task.td, task.graph);
    SolveLimits limits;
    limits.timeout_ms = options.timeout_ms;
    SolveResult res;
    if (options.problem == "steiner") {
      res = solve_steiner(SteinerInstance{task.graph, task.terminals}, nd,
                          task.policy, limits);
    } else {
      const auto mode = options.problem == "tsp" ? HamiltonMode::Tsp
                                                 : HamiltonMode::Decision;
      res = solve_hamilton(task.graph, nd, mode, task.policy, limits);
    }
    rec.stats = res.stats;
    if (res.weight.has_value()) {
      rec.status = "ok";
      rec.answer = options.problem == "hamilton" ? "yes" : std::to_string(*res.weight);
    } else {
      rec.status = "infeasible";
      rec.answer = options.problem == "hamilton" ? "no" : "infeasible";
    }
  } catch (const TimeoutError&) {
    rec.status = "timeout";
    rec.answer = "";
  } catch (const std::exception& e) {
    rec.status = "error";
    rec.error = e.what();
  }
  return rec;
}

std::vector<Task> make_tasks(const BenchOptions& options) {
  std::vector<Task> tasks;
  struct Inst {
    std::string name;
    Graph graph;
    TreeDecomposition td;
    std::vector<int> terminals;
  };
  std::vector<Inst> instances;
  if (!options.dir.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(options.dir)) {
      if (entry.path().extension() == ".gr") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
      Inst inst;
      inst.name = path.stem().string();
      inst.graph = parse_gr(read_file(path));
      auto td_path = path;
      td_path.replace_extension(".td");
      if (std::filesystem::exists(td_path)) {
        inst.td = parse_td(read_file(td_path), inst.graph.vertex_count());
      } else {
        inst.td = heuristic_decompose(inst.graph, DecomposeStrategy::MinDegree);
      }
      if (options.problem == "steiner") {
        auto term_path = path;
        term_path.replace_extension(".terminals");
        if (!std::filesystem::exists(term_path)) {
          throw ParseError("steiner bench needs " + term_path.string());
        }
        inst.terminals =
            parse_terminals(read_file(term_path), inst.graph.vertex_count());
      }
      instances.push_back(std::move(inst));
    }
  } else if (options.family == "ktree") {
    Rng rng(options.seed);
    for (int i = 0; i < options.count; ++i) {
      Inst inst;
      auto gen = random_partial_ktree(options.n, options.width,
                                      options.keep_permille, options.max_weight,
                                      rng.next());
      inst.name = "ktree-n" + std::to_string(options.n) + "-w" +
                  std::to_string(options.width) + "-i" + std::to_string(i);
      inst.graph = std::move(gen.graph);
      inst.td = std::move(gen.td);
      if (options.problem == "steiner") {
        const int k = std::max(1, std::min(options.terminals, options.n));
        std::vector<bool> used(options.n, false);
        for (int j = 0; j < k; ++j) {
          int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(options.n)));
          while (used[v]) v = (v + 1) % options.n;
          used[v] = true;
          inst.terminals.push_back(v);
        }
        std::sort(inst.terminals.begin(), inst.terminals.end());
      }
      instances.push_back(std::move(inst));
    }
  } else if (options.family == "cycle") {
    auto gen = cycle_instance(options.n);
    Inst inst;
    inst.name = "cycle-n" + std::to_string(options.n);
    inst.graph = std::move(gen.graph);
    inst.td = std::move(gen.td);
    if (options.problem == "steiner") {
      inst.terminals = {0, options.n / 2};
    }
    instances.push_back(std::move(inst));
  } else if (!options.family.empty()) {
    throw ParseError("unknown family `" + options.family + "`");
  }
  for (const auto& inst : instances) {
    for (const auto& pname : options.policies) {
      Task task;
      task.instance_name = inst.name;
      task.graph = inst.graph;
      task.td = inst.td;
      task.terminals = inst.terminals;
      task.policy = make_policy(pname, options.threshold_rows);
      task.policy_name = pname;
      tasks.push_back(std::move(task));
    }
  }
  return tasks;
}

}  // namespace

BenchResult run_bench(const BenchOptions& options) {
  const std::vector<Task> tasks = make_tasks(options);
  std::vector<Record> records(tasks.size());
  const int threads = std::min(
      pool_size(options.threads),
      static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= tasks.size()) return;
      records[idx] = run_task(options, tasks[idx]);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  BenchResult out;
  out.instances_run = static_cast<int>(records.size());
  for (const Record& r : records) {
    if (r.status == "error") ++out.errors;
  }
  // the naive per-slice ceiling for the widest bag universe seen
  std::uint64_t max_width = 0;
  for (const Record& r : records) max_width = std::max(max_width, r.stats.width);
  const std::uint64_t bell_naive = bell(static_cast<int>(std::min<std::uint64_t>(max_width + 1, 25)));
  if (options.format == "json") {
    json arr = json::array();
    for (const Record& r : records) arr.push_back(record_to_json(r, bell_naive));
    json doc{{"schema_version", "v1"},
             {"kind", "bench"},
             {"records", arr},
             {"bell_naive_ceiling", bell_naive}};
    out.report = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    const auto cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
      os << cols[i] << (i + 1 == cols.size() ? '\n' : ',');
    }
    for (const Record& r : records) append_csv(os, r, bell_naive);
    out.report = os.str();
  }
  return out;
}

}  // namespace twr::bench
