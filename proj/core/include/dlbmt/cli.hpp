#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dlbmt/scenario.hpp"

namespace dlbmt {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;

struct RunRequest {
  std::string scenario;                  // path or bundled-scenario name
  std::string out_dir = ".";
  std::vector<std::string> strategies;   // defaults to {"dlbmt"}
  std::vector<std::uint64_t> seeds;      // defaults to the scenario seed
  std::optional<long> ticks;
  std::vector<Override> overrides;
  std::string format = "csv";            // csv | json
};

// Writes <out>/<strategy>-<seed>.csv (or .json) per run plus summary.json.
int cmd_run(const RunRequest& request, std::ostream& out, std::ostream& err);

// Runs all (strategy, seed) pairs on identical workload streams and prints
// per-strategy means plus relative improvement of the first strategy.
int cmd_compare(const RunRequest& request, std::ostream& out,
                std::ostream& err);

// Parses and validates; prints counts and the capacity table, no simulation.
int cmd_validate(const std::string& scenario, std::ostream& out,
                 std::ostream& err);

} // namespace dlbmt
