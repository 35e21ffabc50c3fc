#include "twreduce/verify.hpp"

#include <algorithm>
#include <chrono>
#include <json.hpp>

#include "twreduce/decomposition.hpp"
#include "twreduce/generator.hpp"
#include "twreduce/hamilton.hpp"
#include "twreduce/nice_decomposition.hpp"
#include "twreduce/oracles.hpp"
#include "twreduce/steiner.hpp"

namespace twr {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct SuiteCounter {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  json failure_examples = json::array();

  void record(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (failure_examples.size() < 5) failure_examples.push_back(what);
    }
  }

  json to_json() const {
    return json{{"checks", checks},
                {"failures", failures},
                {"failure_examples", failure_examples}};
  }
};

std::vector<TableRow> random_table(Rng& rng, const std::vector<Partition>& all,
                                   std::size_t max_rows) {
  std::vector<TableRow> rows;
  if (max_rows == 0) return rows;
  const std::size_t count = rng.below(max_rows + 1);
  std::vector<bool> used(all.size(), false);
  for (std::size_t i = 0; i < count && i < all.size(); ++i) {
    std::size_t idx = rng.below(all.size());
    while (used[idx]) idx = (idx + 1) % all.size();
    used[idx] = true;
    rows.push_back({all[idx], static_cast<Weight>(rng.range(0, 100))});
  }
  return rows;
}

bool representative_via(const FitsOracle& oracle,
                        const std::vector<TableRow>& input,
                        const std::vector<TableRow>& output) {
  std::vector<std::pair<int, Weight>> in_idx, out_idx;
  for (const TableRow& r : input) in_idx.push_back({oracle.index_of(r.part), r.weight});
  for (const TableRow& r : output) out_idx.push_back({oracle.index_of(r.part), r.weight});
  const int q_count = static_cast<int>(oracle.all().size());
  for (int q = 0; q < q_count; ++q) {
    Weight best_in = kInfiniteWeight, best_out = kInfiniteWeight;
    for (const auto& [i, w] : in_idx) {
      if (oracle.fits(i, q) && w < best_in) best_in = w;
    }
    for (const auto& [i, w] : out_idx) {
      if (oracle.fits(i, q) && w < best_out) best_out = w;
    }
    if (best_in != best_out) return false;
  }
  return true;
}

json verify_reduce(std::uint64_t trials, std::uint64_t seed, SuiteCounter& counter) {
  json detail = json::object();
  std::uint64_t max_rows_out = 0;
  Rng rng(seed ^ 0x7265647563654c4cULL);
  for (int t = 1; t <= 7; ++t) {
    const FitsOracle oracle = FitsOracle::partitions(t);
    const auto all = enumerate_partitions(t);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
      auto rows = random_table(rng, all, std::min<std::size_t>(all.size(), 96));
      const auto res = reduce(rows, t);
      counter.record(res.rows.size() <= (std::size_t{1} << (t - 1)),
                     "reduce cap t=" + std::to_string(t));
      counter.record(representative_via(oracle, rows, res.rows),
                     "reduce representativity t=" + std::to_string(t));
      if (trial % 16 == 0) {
        const auto twice = reduce(res.rows, t);
        counter.record(representative_via(oracle, rows, twice.rows),
                       "reduce idempotent representativity t=" + std::to_string(t));
      }
      max_rows_out = std::max(max_rows_out, res.stats.rows_out);
    }
  }
  detail["partitions_max_rows_out"] = max_rows_out;
  json ranks = json::object();
  for (int t : {2, 4, 6, 8}) {
    const FitsOracle oracle = FitsOracle::matchings(t);
    const int rank = oracle_matchings_matrix_rank(t);
    ranks[std::to_string(t)] = rank;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
      auto rows = random_table(rng, oracle.all(),
                               std::min<std::size_t>(oracle.all().size(), 64));
      const auto res = reduce_matchings(rows, t);
      counter.record(res.rows.size() <= (std::size_t{1} << (t / 2)),
                     "reduce_matchings cap t=" + std::to_string(t));
      counter.record(res.rows.size() <= static_cast<std::size_t>(rank),
                     "reduce_matchings rank bound t=" + std::to_string(t));
      counter.record(representative_via(oracle, rows, res.rows),
                     "matching representativity t=" + std::to_string(t));
    }
  }
  detail["matchings_matrix_rank"] = ranks;
  return detail;
}

json verify_hamilton(std::uint64_t trials, std::uint64_t seed,
                     SuiteCounter& counter) {
  Rng rng(seed ^ 0x68616d696c746f6eULL);
  std::uint64_t yes_count = 0;
  std::uint64_t max_slice_rows_never = 0;
  std::uint64_t reduce_calls_always = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const int n = static_cast<int>(rng.range(7, 8));
    const int full = n * (n - 1) / 2;
    const int m = static_cast<int>(rng.range(static_cast<std::uint64_t>(n),
                                             static_cast<std::uint64_t>(full)));
    const Graph g = random_graph(n, m, 10, rng.next());
    const auto td = heuristic_decompose(g, DecomposeStrategy::MinDegree);
    const auto nd = nicify(td, g);
    const bool expect = oracle_hamilton(g);
    const auto expect_tsp = oracle_tsp(g);
    const auto never =
        solve_hamilton(g, nd, HamiltonMode::Decision, ReducePolicy::never());
    const auto always =
        solve_hamilton(g, nd, HamiltonMode::Decision, ReducePolicy::always());
    counter.record(never.weight.has_value() == expect,
                   "hamilton decision vs oracle, trial " + std::to_string(trial));
    counter.record(always.weight.has_value() == expect,
                   "hamilton decision (always) vs oracle, trial " +
                       std::to_string(trial));
    counter.record(never.weight == always.weight,
                   "hamilton policies agree, trial " + std::to_string(trial));
    counter.record(never.weight == expect_tsp,
                   "tsp weight vs held-karp, trial " + std::to_string(trial));
    if (expect) ++yes_count;
    max_slice_rows_never = std::max(max_slice_rows_never, never.stats.max_slice_rows);
    reduce_calls_always += always.stats.reduce_calls;
  }
  return json{{"yes_instances", yes_count},
              {"max_slice_rows_never", max_slice_rows_never},
              {"reduce_calls_always", reduce_calls_always}};
}

json verify_steiner(std::uint64_t trials, std::uint64_t seed,
                    SuiteCounter& counter) {
  Rng rng(seed ^ 0x737465696e657200ULL);
  std::uint64_t feasible_count = 0;
  std::uint64_t reduce_calls_always = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const int n = static_cast<int>(rng.range(5, 10));
    const int full = n * (n - 1) / 2;
    const int m = static_cast<int>(
        rng.range(static_cast<std::uint64_t>(n - 2), static_cast<std::uint64_t>(full)));
    const Graph g = random_graph(n, m, 10, rng.next());
    const int k = static_cast<int>(rng.range(2, 4));
    std::vector<int> terminals;
    for (int i = 0; i < k; ++i) {
      terminals.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
    }
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()),
                    terminals.end());
    const SteinerInstance inst{g, terminals};
    const auto td = heuristic_decompose(g, DecomposeStrategy::MinDegree);
    const auto nd = nicify(td, g);
    const auto expect = oracle_steiner(inst);
    const auto never = solve_steiner(inst, nd, ReducePolicy::never());
    const auto always = solve_steiner(inst, nd, ReducePolicy::always());
    counter.record(never.weight == expect,
                   "steiner vs oracle, trial " + std::to_string(trial));
    counter.record(always.weight == expect,
                   "steiner (always) vs oracle, trial " + std::to_string(trial));
    if (expect.has_value()) ++feasible_count;
    reduce_calls_always += always.stats.reduce_calls;
  }
  return json{{"feasible_instances", feasible_count},
              {"reduce_calls_always", reduce_calls_always}};
}

}  // namespace

VerifyOutcome run_verify(const VerifyOptions& options) {
  const auto start = Clock::now();
  VerifyOutcome outcome;
  json suites = json::object();
  SuiteCounter counter;
  if (options.suite_reduce) {
    SuiteCounter local;
    json detail = verify_reduce(options.trials, options.seed, local);
    detail.update(local.to_json());
    suites["reduce"] = detail;
    counter.checks += local.checks;
    counter.failures += local.failures;
  }
  if (options.suite_hamilton) {
    SuiteCounter local;
    json detail = verify_hamilton(options.trials, options.seed, local);
    detail.update(local.to_json());
    suites["hamilton"] = detail;
    counter.checks += local.checks;
    counter.failures += local.failures;
  }
  if (options.suite_steiner) {
    SuiteCounter local;
    json detail = verify_steiner(options.trials, options.seed, local);
    detail.update(local.to_json());
    suites["steiner"] = detail;
    counter.checks += local.checks;
    counter.failures += local.failures;
  }
  outcome.checks = counter.checks;
  outcome.failures = counter.failures;
  outcome.passed = counter.failures == 0;
  json report{
      {"schema_version", "v1"},
      {"kind", "verify"},
      {"seed", options.seed},
      {"trials", options.trials},
      {"checks", outcome.checks},
      {"failures", outcome.failures},
      {"passed", outcome.passed},
      {"suites", suites},
      {"wall_nanos",
       static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                      Clock::now() - start)
                                      .count())},
  };
  outcome.json = report.dump(2) + "\n";
  return outcome;
}

}  // namespace twr
