#include "dlbmt/cli.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <ostream>

#include <json.hpp>

namespace dlbmt {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

template <typename Fn>
int guarded(Fn&& fn, std::ostream& err) {
  try {
    return fn();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
}

std::vector<std::string> strategies_of(const RunRequest& request) {
  if (request.strategies.empty()) {
    return {"dlbmt"};
  }
  for (const auto& name : request.strategies) {
    if (!strategy_from_string(name)) {
      throw ValidationError("unknown strategy: " + name);
    }
  }
  return request.strategies;
}

std::vector<Override> overrides_for(const RunRequest& request,
                                    const std::string& strategy,
                                    std::uint64_t seed) {
  std::vector<Override> overrides = request.overrides;
  overrides.emplace_back("strategy", strategy);
  overrides.emplace_back("seed", std::to_string(seed));
  if (request.ticks) {
    overrides.emplace_back("ticks", std::to_string(*request.ticks));
  }
  return overrides;
}

std::vector<std::uint64_t> seeds_of(const RunRequest& request,
                                    const std::string& path) {
  if (!request.seeds.empty()) {
    return request.seeds;
  }
  Scenario probe = load_scenario(path, request.overrides);
  return {probe.config.seed};
}

json summary_entry(const Scenario& scenario, const RunResult& result) {
  auto s = summarize(scenario, result);
  json final_loads = json::object();
  for (const auto& c : result.final_fleet.controllers) {
    if (c.active) {
      final_loads[c.id] = c.load;
    }
  }
  return json{{"scenario", scenario.name},
              {"strategy", s.strategy},
              {"seed", s.seed},
              {"ticks", s.ticks},
              {"means",
               {{"response_time_ms", s.mean_response_ms},
                {"imbalance", s.mean_imbalance},
                {"balancing_rate", s.mean_balancing_rate}}},
              {"totals",
               {{"migrations", s.migrations},
                {"migration_cost", s.migration_cost},
                {"messages", s.messages},
                {"notifications", s.notifications},
                {"scale_actions", s.scale_actions},
                {"unsafe_migrations", s.unsafe_migrations}}},
              {"final",
               {{"active_controllers", s.final_active_controllers},
                {"loads", final_loads}}}};
}

void write_records_json(std::ostream& out, const RunResult& result) {
  json rows = json::array();
  for (const auto& rec : result.records) {
    json loads = json::object();
    for (size_t j = 0; j < result.initial_controller_ids.size(); ++j) {
      loads[result.initial_controller_ids[j]] = rec.controller_loads[j];
    }
    rows.push_back({{"tick", rec.tick},
                    {"loads", loads},
                    {"mean_rt_ms", rec.mean_response_ms},
                    {"imbalance", rec.imbalance},
                    {"balancing_rate", rec.balancing_rate},
                    {"cum_cost", rec.cum_cost},
                    {"cum_msgs", rec.cum_messages},
                    {"migrations", rec.migrations},
                    {"active_controllers", rec.active_controllers}});
  }
  out << rows.dump(2) << '\n';
}

} // namespace

int cmd_run(const RunRequest& request, std::ostream& out, std::ostream& err) {
  return guarded(
      [&]() {
        if (request.format != "csv" && request.format != "json") {
          throw ValidationError("format must be csv or json");
        }
        std::string path = resolve_scenario_path(request.scenario);
        auto strategies = strategies_of(request);
        auto seeds = seeds_of(request, path);
        fs::create_directories(request.out_dir);

        json summaries = json::array();
        for (const auto& strategy : strategies) {
          for (std::uint64_t seed : seeds) {
            Scenario scenario =
                load_scenario(path, overrides_for(request, strategy, seed));
            RunResult result = run(scenario);

            fs::path file = fs::path(request.out_dir) /
                            (strategy + "-" + std::to_string(seed) + "." +
                             request.format);
            std::ofstream stream(file);
            if (!stream) {
              throw Error("cannot write " + file.string());
            }
            if (request.format == "csv") {
              write_csv(stream, result);
            } else {
              write_records_json(stream, result);
            }
            summaries.push_back(summary_entry(scenario, result));
            out << "wrote " << file.string() << '\n';
          }
        }

        fs::path summary_file = fs::path(request.out_dir) / "summary.json";
        std::ofstream stream(summary_file);
        if (!stream) {
          throw Error("cannot write " + summary_file.string());
        }
        stream << json{{"runs", summaries}}.dump(2) << '\n';
        out << "wrote " << summary_file.string() << '\n';
        return kExitOk;
      },
      err);
}

int cmd_compare(const RunRequest& request, std::ostream& out,
                std::ostream& err) {
  return guarded(
      [&]() {
        auto strategies = strategies_of(request);
        if (strategies.size() < 2) {
          err << "usage: compare needs at least two --strategy values\n";
          return kExitConfigError;
        }
        std::string path = resolve_scenario_path(request.scenario);
        auto seeds = seeds_of(request, path);

        // Fan out the (strategy, seed) grid; every run is isolated.
        std::vector<std::future<RunSummary>> futures;
        for (const auto& strategy : strategies) {
          for (std::uint64_t seed : seeds) {
            futures.push_back(std::async(std::launch::async, [&, strategy,
                                                              seed]() {
              Scenario scenario =
                  load_scenario(path, overrides_for(request, strategy, seed));
              RunResult result = run(scenario);
              return summarize(scenario, result);
            }));
          }
        }

        struct Aggregate {
          double response = 0, imbalance = 0, rate = 0, cost = 0;
          double messages = 0, migrations = 0;
        };
        std::vector<Aggregate> agg(strategies.size());
        size_t f = 0;
        for (size_t i = 0; i < strategies.size(); ++i) {
          for (size_t k = 0; k < seeds.size(); ++k) {
            RunSummary s = futures[f++].get();
            agg[i].response += s.mean_response_ms;
            agg[i].imbalance += s.mean_imbalance;
            agg[i].rate += s.mean_balancing_rate;
            agg[i].cost += s.migration_cost;
            agg[i].messages += static_cast<double>(s.messages);
            agg[i].migrations += static_cast<double>(s.migrations);
          }
          double n = static_cast<double>(seeds.size());
          agg[i].response /= n;
          agg[i].imbalance /= n;
          agg[i].rate /= n;
          agg[i].cost /= n;
          agg[i].messages /= n;
          agg[i].migrations /= n;
        }

        out << std::left << std::setw(20) << "strategy" << std::right
            << std::setw(12) << "rt_ms" << std::setw(12) << "imbalance"
            << std::setw(12) << "bal_rate" << std::setw(14) << "cost"
            << std::setw(12) << "messages" << std::setw(12) << "migrations"
            << '\n';
        out << std::setprecision(4) << std::fixed;
        for (size_t i = 0; i < strategies.size(); ++i) {
          out << std::left << std::setw(20) << strategies[i] << std::right
              << std::setw(12) << agg[i].response << std::setw(12)
              << agg[i].imbalance << std::setw(12) << agg[i].rate
              << std::setw(14) << agg[i].cost << std::setw(12)
              << agg[i].messages << std::setw(12) << agg[i].migrations << '\n';
        }

        // Relative improvement of the first strategy over each other one;
        // positive means the first strategy is better on that metric.
        auto improvement = [](double first, double other, bool higher_better) {
          if (other == 0.0) {
            return 0.0;
          }
          return (higher_better ? (first - other) : (other - first)) / other *
                 100.0;
        };
        for (size_t i = 1; i < strategies.size(); ++i) {
          out << '\n'
              << strategies[0] << " vs " << strategies[i] << ":\n"
              << "  response_time  " << std::setw(8)
              << improvement(agg[0].response, agg[i].response, false) << " %\n"
              << "  imbalance      " << std::setw(8)
              << improvement(agg[0].imbalance, agg[i].imbalance, false)
              << " %\n"
              << "  balancing_rate " << std::setw(8)
              << improvement(agg[0].rate, agg[i].rate, true) << " %\n"
              << "  cost           " << std::setw(8)
              << improvement(agg[0].cost, agg[i].cost, false) << " %\n"
              << "  messages       " << std::setw(8)
              << improvement(agg[0].messages, agg[i].messages, false)
              << " %\n";
        }

        if (request.out_dir != ".") {
          fs::create_directories(request.out_dir);
          json doc = json::array();
          for (size_t i = 0; i < strategies.size(); ++i) {
            doc.push_back({{"strategy", strategies[i]},
                           {"mean_response_ms", agg[i].response},
                           {"mean_imbalance", agg[i].imbalance},
                           {"mean_balancing_rate", agg[i].rate},
                           {"mean_cost", agg[i].cost},
                           {"mean_messages", agg[i].messages},
                           {"mean_migrations", agg[i].migrations}});
          }
          std::ofstream stream(fs::path(request.out_dir) / "comparison.json");
          stream << doc.dump(2) << '\n';
        }
        return kExitOk;
      },
      err);
}

int cmd_validate(const std::string& scenario_ref, std::ostream& out,
                 std::ostream& err) {
  return guarded(
      [&]() {
        std::string path = resolve_scenario_path(scenario_ref);
        Scenario scenario = load_scenario(path);
        out << scenario.name << ": " << scenario.graph.node_count()
            << " nodes, " << scenario.graph.edge_count() << " edges, "
            << scenario.controllers.size() << " controllers, "
            << scenario.switches.size() << " switches\n";
        out << std::left << std::setw(12) << "controller" << std::setw(10)
            << "site" << std::right << std::setw(10) << "cpu" << std::setw(10)
            << "mem" << std::setw(10) << "bw" << "  active\n";
        for (const auto& c : scenario.controllers) {
          out << std::left << std::setw(12) << c.id << std::setw(10) << c.site
              << std::right << std::setw(10) << c.capacity.cpu << std::setw(10)
              << c.capacity.mem << std::setw(10) << c.capacity.bw << "  "
              << (c.initially_active ? "yes" : "no") << '\n';
        }
        return kExitOk;
      },
      err);
}

} // namespace dlbmt
