// End-to-end checks of the installed command surface. Drives the real binary
// (path in TWREDUCE_BIN) through popen and checks exit codes and output.
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <string>

#include "twreduce/stats_json.hpp"

namespace {

int failures = 0;

#define CLI_CHECK(cond, what)                                       \
  do {                                                              \
    if (!(cond)) {                                                  \
      ++failures;                                                   \
      std::cerr << "FAIL " << what << " (" << #cond << ")\n";       \
    }                                                               \
  } while (0)

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const char* bin = std::getenv("TWREDUCE_BIN");
  if (bin == nullptr) {
    std::cerr << "TWREDUCE_BIN not set\n";
    std::exit(1);
  }
  const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    std::cerr << "popen failed\n";
    std::exit(1);
  }
  RunResult res;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    res.out.append(buffer, got);
  }
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string data(const std::string& name) {
  const char* dir = std::getenv("TWREDUCE_DATA");
  if (dir == nullptr) {
    std::cerr << "TWREDUCE_DATA not set\n";
    std::exit(1);
  }
  return std::string(dir) + "/" + name;
}

}  // namespace

int main() {
  {
    const auto res = run("solve hamilton --gr " + data("c5.gr") + " --mode decision");
    CLI_CHECK(res.exit_code == 0, "c5 decision exit");
    CLI_CHECK(res.out.find("\"answer\": \"yes\"") != std::string::npos,
              "c5 decision answer");
    CLI_CHECK(twr::validate_solve_json(res.out).empty(), "c5 output validates");
  }
  {
    const auto res = run("solve hamilton --gr " + data("c5.gr") +
                         " --mode tsp --policy threshold");
    CLI_CHECK(res.exit_code == 0, "c5 tsp exit");
    CLI_CHECK(res.out.find("\"answer\": 5") != std::string::npos, "c5 tsp answer");
  }
  {
    const auto res = run("solve hamilton --gr " + data("p4.gr") +
                         " --mode decision --expect-feasible");
    CLI_CHECK(res.exit_code == 1, "p4 expect-feasible exit");
    CLI_CHECK(res.out.find("\"answer\": \"no\"") != std::string::npos, "p4 answer");
  }
  {
    const auto res = run("solve hamilton --gr " + data("bad.gr") + " --mode decision");
    CLI_CHECK(res.exit_code == 2, "malformed gr exit");
  }
  {
    const auto res = run("solve steiner --gr " + data("star.gr") +
                         " --terminals " + data("star.terminals") +
                         " --policy always");
    CLI_CHECK(res.exit_code == 0, "steiner exit");
    CLI_CHECK(res.out.find("\"answer\": 3") != std::string::npos, "steiner answer");
  }
  {
    const auto res = run("solve steiner --gr " + data("star.gr"));
    CLI_CHECK(res.exit_code != 0, "steiner without terminals fails");
  }
  {
    // identical runs byte-match once clocks are stripped
    const std::string cmd =
        "solve hamilton --gr " + data("c5.gr") + " --mode tsp --policy always";
    const auto a = run(cmd);
    const auto b = run(cmd);
    CLI_CHECK(twr::strip_timing_fields(a.out) == twr::strip_timing_fields(b.out),
              "solve determinism");
  }
  {
    const auto res = run("decompose --gr " + data("c5.gr"));
    CLI_CHECK(res.exit_code == 0, "decompose exit");
    CLI_CHECK(res.out.rfind("s td ", 0) == 0, "decompose header");
  }
  {
    const auto res = run("schema");
    CLI_CHECK(res.exit_code == 0, "schema exit");
    const auto doc = nlohmann::json::parse(res.out, nullptr, false);
    CLI_CHECK(!doc.is_discarded() && doc.at("schema_version") == "v1",
              "schema version");
  }
  {
    const auto res = run("verify --suite reduce --trials 5 --seed 3");
    CLI_CHECK(res.exit_code == 0, "verify exit");
    CLI_CHECK(res.out.find("\"failures\": 0") != std::string::npos,
              "verify failures");
  }
  {
    const auto res = run("bench --family cycle --n 64 --problem hamilton "
                         "--policies never,always --format csv");
    CLI_CHECK(res.exit_code == 0, "bench exit");
    CLI_CHECK(res.out.rfind("instance,policy,problem,status", 0) == 0,
              "bench csv header");
    // one record per (instance, policy)
    const auto lines = std::count(res.out.begin(), res.out.end(), '\n');
    CLI_CHECK(lines == 3, "bench record count");
  }
  {
    const auto res = run("bench --family ktree --count 2 --n 12 --width 3 "
                         "--problem steiner --terminals 3 --format json");
    CLI_CHECK(res.exit_code == 0, "steiner bench exit");
    const auto doc = nlohmann::json::parse(res.out, nullptr, false);
    CLI_CHECK(!doc.is_discarded() && doc.at("records").size() == 4,
              "steiner bench records");
  }
  {
    // an empty instance set yields an empty report and exit 0
    std::system("mkdir -p /tmp/twreduce_empty_dir");
    const auto res = run("bench --dir /tmp/twreduce_empty_dir --format csv");
    CLI_CHECK(res.exit_code == 0, "empty bench exit");
    CLI_CHECK(std::count(res.out.begin(), res.out.end(), '\n') == 1,
              "empty bench has only the header");
  }
  {
    // per-instance timeouts are recorded and the run continues
    const auto res = run("bench --family cycle --n 200000 --problem hamilton "
                         "--policies never --timeout-ms 1 --format csv");
    CLI_CHECK(res.exit_code == 0, "timeout bench exit");
    CLI_CHECK(res.out.find(",timeout,") != std::string::npos,
              "timeout recorded in the report");
  }
  {
    // a decomposition written by `decompose` feeds back through --td
    const auto td = run("decompose --gr " + data("c5.gr") +
                        " --out /tmp/twreduce_c5.td");
    CLI_CHECK(td.exit_code == 0, "decompose --out exit");
    const auto res = run("solve hamilton --gr " + data("c5.gr") +
                         " --td /tmp/twreduce_c5.td --mode tsp");
    CLI_CHECK(res.exit_code == 0, "solve --td exit");
    CLI_CHECK(res.out.find("\"answer\": 5") != std::string::npos,
              "solve --td answer");
  }
  {
    const auto res = run("solve hamilton --gr " + data("c5.gr") + " --mode banana");
    CLI_CHECK(res.exit_code != 0 && res.exit_code != 1, "bad mode is a usage error");
  }
  {
    // the worker pool honors TWREDUCE_THREADS
    const char* bin = std::getenv("TWREDUCE_BIN");
    const std::string cmd = std::string("TWREDUCE_THREADS=1 ") + bin +
                            " bench --family cycle --n 64 --format csv 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    CLI_CHECK(pipe != nullptr, "env pool popen");
    std::string out;
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, got);
    const int status = pclose(pipe);
    CLI_CHECK(WIFEXITED(status) && WEXITSTATUS(status) == 0, "env pool exit");
    CLI_CHECK(std::count(out.begin(), out.end(), '\n') == 3, "env pool records");
  }

  if (failures == 0) {
    std::cout << "cli tests passed\n";
    return 0;
  }
  std::cerr << failures << " cli check(s) failed\n";
  return 1;
}
