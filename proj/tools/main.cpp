#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "bench_runner.hpp"
#include "twreduce/decomposition.hpp"
#include "twreduce/hamilton.hpp"
#include "twreduce/stats_json.hpp"
#include "twreduce/steiner.hpp"
#include "twreduce/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw twr::ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SolveArgs {
  std::string gr_path;
  std::string td_path;
  std::string terminals_path;
  std::string policy = "never";
  std::uint64_t threshold_rows = 0;
  std::string mode = "decision";
  std::string strategy = "min-degree";
  std::string reducer = "matchings";
  bool expect_feasible = false;
  std::uint64_t timeout_ms = 0;
};

twr::ReducePolicy make_policy(const SolveArgs& args) {
  twr::ReducePolicy policy = twr::ReducePolicy::never();
  if (args.policy == "always") policy = twr::ReducePolicy::always();
  if (args.policy == "threshold") policy = twr::ReducePolicy::threshold(args.threshold_rows);
  policy.matchings_reducer = args.reducer != "general";
  return policy;
}

twr::DecomposeStrategy make_strategy(const std::string& name) {
  return name == "min-fill" ? twr::DecomposeStrategy::MinFill
                            : twr::DecomposeStrategy::MinDegree;
}

twr::NiceDecomposition load_decomposition(const SolveArgs& args,
                                          const twr::Graph& g) {
  twr::TreeDecomposition td;
  if (!args.td_path.empty()) {
    td = twr::parse_td(read_file(args.td_path), g.vertex_count());
  } else {
    td = twr::heuristic_decompose(g, make_strategy(args.strategy));
  }
  return twr::nicify(td, g);
}

int emit_report(const twr::SolveReport& report, bool expect_feasible) {
  std::cout << twr::solve_report_json(report);
  if (expect_feasible && !report.answer_weight.has_value()) {
    return kExitInfeasible;
  }
  return kExitOk;
}

int cmd_solve_hamilton(const SolveArgs& args) {
  const twr::Graph g = twr::parse_gr(read_file(args.gr_path));
  const auto nd = load_decomposition(args, g);
  const auto mode = args.mode == "tsp" ? twr::HamiltonMode::Tsp
                                       : twr::HamiltonMode::Decision;
  twr::SolveLimits limits;
  limits.timeout_ms = args.timeout_ms;
  const auto res = twr::solve_hamilton(g, nd, mode, make_policy(args), limits);
  twr::SolveReport report;
  report.problem = "hamilton";
  report.mode = args.mode;
  report.policy = args.policy;
  report.decision = mode == twr::HamiltonMode::Decision;
  report.answer_weight = res.weight;
  report.stats = res.stats;
  return emit_report(report, args.expect_feasible);
}

int cmd_solve_steiner(const SolveArgs& args) {
  const twr::Graph g = twr::parse_gr(read_file(args.gr_path));
  const auto terminals =
      twr::parse_terminals(read_file(args.terminals_path), g.vertex_count());
  const auto nd = load_decomposition(args, g);
  twr::SolveLimits limits;
  limits.timeout_ms = args.timeout_ms;
  const auto res = twr::solve_steiner({g, terminals}, nd, make_policy(args), limits);
  twr::SolveReport report;
  report.problem = "steiner";
  report.mode = "min-weight";
  report.policy = args.policy;
  report.decision = false;
  report.answer_weight = res.weight;
  report.stats = res.stats;
  return emit_report(report, args.expect_feasible);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "twreduce: connectivity problems on tree decompositions with "
      "rank-based table compression"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve one instance, JSON to stdout");
  solve->require_subcommand(1);

  auto add_common = [&](CLI::App* cmd, bool steiner) {
    cmd->add_option("--gr", solve_args.gr_path, "PACE-style .gr graph file")
        ->required();
    cmd->add_option("--td", solve_args.td_path,
                    "PACE .td decomposition (heuristic when absent)");
    cmd->add_option("--policy", solve_args.policy, "Reduce policy")
        ->check(CLI::IsMember({"never", "always", "threshold"}))
        ->capture_default_str();
    cmd->add_option("--threshold-rows", solve_args.threshold_rows,
                    "Row threshold for --policy threshold (0 = 2^(width+1))");
    cmd->add_option("--strategy", solve_args.strategy,
                    "Heuristic when no --td is given")
        ->check(CLI::IsMember({"min-degree", "min-fill"}))
        ->capture_default_str();
    cmd->add_flag("--expect-feasible", solve_args.expect_feasible,
                  "Exit 1 when the instance is infeasible");
    cmd->add_option("--timeout-ms", solve_args.timeout_ms,
                    "Per-run wall budget (0 = unlimited)");
    if (steiner) {
      cmd->add_option("--terminals", solve_args.terminals_path,
                      "Terminal list file")
          ->required();
    }
  };

  auto* hamilton = solve->add_subcommand("hamilton", "Hamiltonian cycle / TSP");
  add_common(hamilton, false);
  hamilton->add_option("--mode", solve_args.mode, "decision or tsp")
      ->check(CLI::IsMember({"decision", "tsp"}))
      ->capture_default_str();
  hamilton
      ->add_option("--reducer", solve_args.reducer,
                   "matchings-specific or general cut-matrix reduction")
      ->check(CLI::IsMember({"matchings", "general"}))
      ->capture_default_str();

  auto* steiner = solve->add_subcommand("steiner", "Minimum Steiner tree");
  add_common(steiner, true);

  struct {
    std::string gr_path;
    std::string strategy = "min-degree";
    std::string out;
  } dec_args;
  auto* decompose = app.add_subcommand("decompose", "Emit a heuristic .td");
  decompose->add_option("--gr", dec_args.gr_path, "PACE-style .gr graph file")
      ->required();
  decompose->add_option("--strategy", dec_args.strategy, "Heuristic")
      ->check(CLI::IsMember({"min-degree", "min-fill"}))
      ->capture_default_str();
  decompose->add_option("--out", dec_args.out, "Output path (stdout if absent)");

  struct {
    std::string suite = "all";
    std::uint64_t trials = 200;
    std::uint64_t seed = 1;
  } verify_args;
  auto* verify = app.add_subcommand("verify", "Run the oracle suites");
  verify->add_option("--suite", verify_args.suite, "Which suite")
      ->check(CLI::IsMember({"reduce", "hamilton", "steiner", "all"}))
      ->capture_default_str();
  verify->add_option("--trials", verify_args.trials, "Trials per check")
      ->capture_default_str();
  verify->add_option("--seed", verify_args.seed, "Base seed")
      ->capture_default_str();

  twr::bench::BenchOptions bench_options;
  std::string bench_policies = "never,always";
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Instrumented benchmark harness");
  bench->add_option("--problem", bench_options.problem, "Problem")
      ->check(CLI::IsMember({"hamilton", "tsp", "steiner"}))
      ->capture_default_str();
  bench->add_option("--policies", bench_policies, "Comma list of policies")
      ->capture_default_str();
  bench->add_option("--threshold-rows", bench_options.threshold_rows,
                    "Row threshold for the threshold policy");
  bench->add_option("--family", bench_options.family,
                    "Generated family: ktree or cycle");
  bench->add_option("--dir", bench_options.dir, "Directory of .gr instances");
  bench->add_option("--count", bench_options.count, "Instances to generate")
      ->capture_default_str();
  bench->add_option("--n", bench_options.n, "Vertices per generated instance")
      ->capture_default_str();
  bench->add_option("--width", bench_options.width, "k-tree width parameter")
      ->capture_default_str();
  bench->add_option("--keep-permille", bench_options.keep_permille,
                    "Edge keep rate for ktree family")
      ->capture_default_str();
  bench->add_option("--max-weight", bench_options.max_weight, "Max edge weight")
      ->capture_default_str();
  bench->add_option("--terminals", bench_options.terminals,
                    "Terminal count for steiner bench")
      ->capture_default_str();
  bench->add_option("--seed", bench_options.seed, "Generator seed")
      ->capture_default_str();
  bench->add_option("--timeout-ms", bench_options.timeout_ms,
                    "Per-instance wall budget (0 = unlimited)");
  bench->add_option("--format", bench_options.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  bench->add_option("--threads", bench_options.threads,
                    "Worker pool size (0 = TWREDUCE_THREADS or hardware)");
  bench->add_option("--out", bench_out, "Output path (stdout if absent)");

  auto* schema = app.add_subcommand("schema", "Print the v1 stats JSON schema");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      if (hamilton->parsed()) return cmd_solve_hamilton(solve_args);
      return cmd_solve_steiner(solve_args);
    }
    if (decompose->parsed()) {
      const twr::Graph g = twr::parse_gr(read_file(dec_args.gr_path));
      const auto td =
          twr::heuristic_decompose(g, make_strategy(dec_args.strategy));
      const std::string text = twr::write_td(td, g.vertex_count());
      if (dec_args.out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(dec_args.out, std::ios::binary);
        if (!out) throw twr::ParseError("cannot write " + dec_args.out);
        out << text;
      }
      return kExitOk;
    }
    if (verify->parsed()) {
      twr::VerifyOptions options;
      options.trials = verify_args.trials;
      options.seed = verify_args.seed;
      options.suite_reduce =
          verify_args.suite == "all" || verify_args.suite == "reduce";
      options.suite_hamilton =
          verify_args.suite == "all" || verify_args.suite == "hamilton";
      options.suite_steiner =
          verify_args.suite == "all" || verify_args.suite == "steiner";
      const auto outcome = twr::run_verify(options);
      std::cout << outcome.json;
      return outcome.passed ? kExitOk : kExitInfeasible;
    }
    if (bench->parsed()) {
      bench_options.policies.clear();
      std::stringstream ss(bench_policies);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) bench_options.policies.push_back(item);
      }
      const auto result = twr::bench::run_bench(bench_options);
      if (bench_out.empty()) {
        std::cout << result.report;
      } else {
        std::ofstream out(bench_out, std::ios::binary);
        if (!out) throw twr::ParseError("cannot write " + bench_out);
        out << result.report;
      }
      return result.errors == 0 ? kExitOk : kExitInfeasible;
    }
    if (schema->parsed()) {
      std::cout << twr::stats_schema_json();
      return kExitOk;
    }
  } catch (const twr::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const twr::TimeoutError& e) {
    std::cerr << "timeout: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
