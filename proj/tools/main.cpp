// dlbmt: multi-controller SDN load-balancing simulator.
//
// Subcommands:
//   run      -- simulate one scenario, write per-run CSV/JSON + summary.json
//   compare  -- run several strategies on identical workload streams
//   validate -- parse and validate a scenario file, print its shape

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dlbmt/cli.hpp"

namespace {

// --set key=value, repeatable.
std::vector<dlbmt::Override> parse_overrides(const std::vector<std::string>& raw) {
  std::vector<dlbmt::Override> overrides;
  for (const auto& entry : raw) {
    auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw CLI::ValidationError("--set", "expected key=value, got: " + entry);
    }
    overrides.emplace_back(entry.substr(0, eq), entry.substr(eq + 1));
  }
  return overrides;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::uint64_t> seeds;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) {
      seeds.push_back(std::stoull(item));
    }
  }
  return seeds;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-controller SDN control-plane load-balancing simulator"};
  app.require_subcommand(1);

  std::string scenario;
  std::string out_dir = ".";
  std::vector<std::string> strategies;
  std::vector<std::string> sets;
  std::string format = "csv";
  long ticks = -1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string seeds_csv;

  auto add_common = [&](CLI::App* cmd, bool with_outputs) {
    cmd->add_option("--scenario", scenario,
                    "Scenario file path or bundled scenario name")
        ->required();
    cmd->add_option("--strategy", strategies,
                    "Strategy: dlbmt | single_threshold (repeatable)");
    cmd->add_option("--seed", seed, "Single seed")
        ->each([&](const std::string&) { seed_given = true; });
    cmd->add_option("--seeds", seeds_csv, "Comma-separated seed list");
    cmd->add_option("--ticks", ticks, "Override tick count");
    cmd->add_option("--set", sets, "Override scenario key: dot.path=value")
        ->take_all();
    if (with_outputs) {
      cmd->add_option("--out", out_dir, "Output directory");
      cmd->add_option("--format", format, "Metrics file format: csv | json")
          ->check(CLI::IsMember({"csv", "json"}));
    }
  };

  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario");
  add_common(run_cmd, true);

  auto* compare_cmd =
      app.add_subcommand("compare", "Compare strategies on shared workloads");
  add_common(compare_cmd, true);

  auto* validate_cmd =
      app.add_subcommand("validate", "Validate a scenario file");
  validate_cmd
      ->add_option("--scenario", scenario,
                   "Scenario file path or bundled scenario name")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) {
      return dlbmt::cmd_validate(scenario, std::cout, std::cerr);
    }

    dlbmt::RunRequest request;
    request.scenario = scenario;
    request.out_dir = out_dir;
    request.strategies = strategies;
    request.format = format;
    request.overrides = parse_overrides(sets);
    if (ticks >= 0) {
      request.ticks = ticks;
    }
    if (!seeds_csv.empty()) {
      request.seeds = parse_seed_list(seeds_csv);
    } else if (seed_given) {
      request.seeds = {seed};
    }

    if (run_cmd->parsed()) {
      return dlbmt::cmd_run(request, std::cout, std::cerr);
    }
    return dlbmt::cmd_compare(request, std::cout, std::cerr);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dlbmt::kExitConfigError;
  }
}
