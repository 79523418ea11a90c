#include "dlbmt/scenario.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dlbmt/topology.hpp"

namespace dlbmt {

namespace {

using nlohmann::json;

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open scenario file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

const json& require(const json& j, const char* key, const std::string& origin) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(origin + ": missing required key \"" + key + "\"");
  }
  return *it;
}

double number_or(const json& j, const char* key, double fallback,
                 const std::string& origin) {
  auto it = j.find(key);
  if (it == j.end()) {
    return fallback;
  }
  if (!it->is_number()) {
    throw ParseError(origin + ": key \"" + key + "\" must be a number");
  }
  return it->get<double>();
}

CapacityVector parse_capacity(const json& j, const std::string& origin) {
  CapacityVector cap;
  if (j.is_number()) {
    cap.cpu = cap.mem = cap.bw = j.get<double>();
  } else if (j.is_object()) {
    cap.cpu = require(j, "cpu", origin).get<double>();
    cap.mem = require(j, "mem", origin).get<double>();
    cap.bw = require(j, "bw", origin).get<double>();
  } else {
    throw ParseError(origin + ": capacity must be a number or {cpu,mem,bw}");
  }
  return cap;
}

void apply_override(json& doc, const Override& o) {
  json* node = &doc;
  std::string path = o.first;
  size_t pos = 0;
  while (true) {
    size_t dot = path.find('.', pos);
    std::string segment = path.substr(pos, dot - pos);
    bool last = dot == std::string::npos;
    bool is_index = !segment.empty() &&
                    segment.find_first_not_of("0123456789") == std::string::npos;
    if (node->is_array() && is_index) {
      size_t idx = std::stoul(segment);
      if (idx >= node->size()) {
        throw ParseError("override index out of range: " + o.first);
      }
      if (last) {
        json value;
        try {
          value = json::parse(o.second);
        } catch (const json::exception&) {
          value = o.second;
        }
        (*node)[idx] = value;
        return;
      }
      node = &(*node)[idx];
    } else if (node->is_object() || node->is_null()) {
      if (last) {
        json value;
        try {
          value = json::parse(o.second);
        } catch (const json::exception&) {
          value = o.second;
        }
        (*node)[segment] = value;
        return;
      }
      node = &(*node)[segment];
    } else {
      throw ParseError("override path does not address an object or array: " +
                       o.first);
    }
    pos = dot + 1;
  }
}

Scenario build_scenario(json doc, const std::string& origin) {
  Scenario scenario;
  scenario.name = doc.value("name", std::filesystem::path(origin).stem().string());

  // --- topology ---
  std::vector<std::string> nodes;
  for (const auto& n : require(doc, "nodes", origin)) {
    if (!n.is_string()) {
      throw ParseError(origin + ": nodes must be string ids");
    }
    nodes.push_back(n.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : require(doc, "edges", origin)) {
    if (!e.is_array() || e.size() != 2) {
      throw ParseError(origin + ": each edge must be a [id,id] pair");
    }
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  scenario.graph = NetworkGraph(std::move(nodes), std::move(edges));

  std::set<std::string> controller_ids;
  for (const auto& c : require(doc, "controllers", origin)) {
    ControllerSpec spec;
    spec.id = require(c, "id", origin).get<std::string>();
    spec.site = require(c, "site", origin).get<std::string>();
    spec.capacity = parse_capacity(require(c, "capacity", origin),
                                   origin + " controller " + spec.id);
    spec.initially_active = c.value("active", true);
    spec.background_load = number_or(c, "background", 0.0, origin);
    if (!controller_ids.insert(spec.id).second) {
      throw ValidationError("duplicate controller id: " + spec.id);
    }
    if (!scenario.graph.has_node(spec.site)) {
      throw ValidationError("controller " + spec.id +
                            " placed at unknown node " + spec.site);
    }
    if (!(spec.capacity.cpu > 0) || !(spec.capacity.mem > 0) ||
        !(spec.capacity.bw > 0)) {
      throw ValidationError("controller " + spec.id +
                            " has a non-positive capacity component");
    }
    if (spec.background_load < 0) {
      throw ValidationError("controller " + spec.id +
                            " has a negative background load");
    }
    scenario.controllers.push_back(std::move(spec));
  }
  if (scenario.controllers.empty()) {
    throw ValidationError(origin + ": at least one controller required");
  }

  std::set<std::string> switch_ids;
  for (const auto& s : require(doc, "switches", origin)) {
    SwitchSpec spec;
    spec.id = require(s, "id", origin).get<std::string>();
    spec.site = require(s, "site", origin).get<std::string>();
    if (!switch_ids.insert(spec.id).second) {
      throw ValidationError("duplicate switch id: " + spec.id);
    }
    if (!scenario.graph.has_node(spec.site)) {
      throw ValidationError("switch " + spec.id + " placed at unknown node " +
                            spec.site);
    }
    scenario.switches.push_back(std::move(spec));
  }

  // --- simulation config ---
  auto& cfg = scenario.config;
  if (auto it = doc.find("strategy"); it != doc.end()) {
    auto strategy = strategy_from_string(it->get<std::string>());
    if (!strategy) {
      throw ValidationError("unknown strategy: " + it->get<std::string>());
    }
    cfg.strategy = *strategy;
  }
  cfg.ticks = static_cast<long>(number_or(doc, "ticks", 200, origin));
  if (cfg.ticks < 1) {
    throw ValidationError("ticks must be >= 1");
  }

  if (auto it = doc.find("weights"); it != doc.end()) {
    cfg.weights.a = require(*it, "a", origin).get<double>();
    cfg.weights.b = require(*it, "b", origin).get<double>();
    cfg.weights.c = require(*it, "c", origin).get<double>();
  }
  validate_weights(cfg.weights);

  if (auto it = doc.find("thresholds"); it != doc.end()) {
    if (!it->is_array() || it->size() != 4) {
      throw ValidationError("thresholds must be a 4-element ascending array");
    }
    for (size_t i = 0; i < 4; ++i) {
      cfg.thresholds.bounds[i] = (*it)[i].get<double>();
    }
  }
  cfg.thresholds.hysteresis = number_or(doc, "hysteresis", 0.0, origin);
  cfg.thresholds.validate();

  // --- workload ---
  auto& wl = cfg.workload;
  double base_rate = 0.0;
  if (auto it = doc.find("workload"); it != doc.end()) {
    const json& w = *it;
    base_rate = number_or(w, "base_rate", 0.0, origin);
    if (auto uc = w.find("unit_cost"); uc != w.end()) {
      wl.unit_cost.cpu = number_or(*uc, "cpu", 0.0, origin);
      wl.unit_cost.mem = number_or(*uc, "mem", 0.0, origin);
      wl.unit_cost.bw = number_or(*uc, "bw", 0.0, origin);
      if (wl.unit_cost.cpu < 0 || wl.unit_cost.mem < 0 || wl.unit_cost.bw < 0) {
        throw ValidationError("workload.unit_cost components must be >= 0");
      }
    }
    wl.jitter = number_or(w, "jitter", 0.0, origin);
    if (wl.jitter < 0.0 || wl.jitter >= 1.0) {
      throw ValidationError("workload.jitter must lie in [0,1)");
    }
    wl.seed = static_cast<std::uint64_t>(number_or(w, "seed", 0.0, origin));
    if (auto mod = w.find("modulation"); mod != w.end()) {
      for (const auto& step : *mod) {
        ModulationStep m;
        m.from_tick = static_cast<long>(require(step, "from_tick", origin).get<double>());
        m.to_tick = static_cast<long>(require(step, "to_tick", origin).get<double>());
        m.multiplier = require(step, "multiplier", origin).get<double>();
        if (m.to_tick < m.from_tick || m.multiplier < 0) {
          throw ValidationError("malformed modulation step");
        }
        wl.modulation.push_back(m);
      }
    }
    if (auto rates = w.find("rates"); rates != w.end()) {
      for (const auto& [key, value] : rates->items()) {
        if (!switch_ids.count(key)) {
          throw ValidationError("workload.rates references unknown switch: " +
                                key);
        }
        wl.rates[key] = value.get<double>();
      }
    }
  }
  for (const auto& sw : scenario.switches) {
    if (!wl.rates.count(sw.id)) {
      wl.rates[sw.id] = base_rate;
    }
    if (wl.rates[sw.id] < 0) {
      throw ValidationError("negative rate for switch " + sw.id);
    }
  }

  cfg.seed = static_cast<std::uint64_t>(
      number_or(doc, "seed", static_cast<double>(wl.seed), origin));
  cfg.single_threshold = number_or(doc, "single_threshold", 75.0, origin);
  cfg.balance_every_n_ticks =
      static_cast<int>(number_or(doc, "balance_every_n_ticks", 1, origin));
  if (cfg.balance_every_n_ticks < 1) {
    throw ValidationError("balance_every_n_ticks must be >= 1");
  }

  if (auto it = doc.find("response_time"); it != doc.end()) {
    cfg.response.base_ms = number_or(*it, "base_ms", 2.0, origin);
    cfg.response.exponent = number_or(*it, "exponent", 1.0, origin);
    if (cfg.response.base_ms <= 0 || cfg.response.exponent <= 0) {
      throw ValidationError("response_time parameters must be positive");
    }
  }

  auto& planner = cfg.planner;
  if (auto it = doc.find("efficiency_direction"); it != doc.end()) {
    std::string v = it->get<std::string>();
    if (v == "max") {
      planner.efficiency_direction = PlannerConfig::EfficiencyDirection::Max;
    } else if (v == "min") {
      planner.efficiency_direction = PlannerConfig::EfficiencyDirection::Min;
    } else {
      throw ValidationError("efficiency_direction must be max or min");
    }
  }
  if (auto it = doc.find("dc_mean_scope"); it != doc.end()) {
    std::string v = it->get<std::string>();
    if (v == "fleet") {
      planner.dc_mean_scope = PlannerConfig::DcMeanScope::Fleet;
    } else if (v == "pair") {
      planner.dc_mean_scope = PlannerConfig::DcMeanScope::Pair;
    } else {
      throw ValidationError("dc_mean_scope must be fleet or pair");
    }
  }
  planner.migration_protocol_messages = static_cast<int>(
      number_or(doc, "migration_protocol_messages", 6, origin));
  if (planner.migration_protocol_messages < 0) {
    throw ValidationError("migration_protocol_messages must be >= 0");
  }
  if (auto it = doc.find("default_new_controller_capacity"); it != doc.end()) {
    planner.default_new_controller_capacity =
        parse_capacity(*it, origin + " default_new_controller_capacity");
  }

  return scenario;
}

} // namespace

Scenario parse_scenario_text(const std::string& json_text,
                             const std::string& origin,
                             const std::vector<Override>& overrides) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
  for (const auto& o : overrides) {
    apply_override(doc, o);
  }
  return build_scenario(std::move(doc), origin);
}

Scenario load_scenario(const std::string& path,
                       const std::vector<Override>& overrides) {
  json doc = parse_json_file(path);
  for (const auto& o : overrides) {
    apply_override(doc, o);
  }
  return build_scenario(std::move(doc), path);
}

TopologyBundle load_topology(const std::string& path) {
  Scenario scenario = load_scenario(path);
  return {std::move(scenario.graph), std::move(scenario.controllers),
          std::move(scenario.switches)};
}

std::string resolve_scenario_path(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  if (fs::exists(name_or_path)) {
    return name_or_path;
  }

  std::vector<fs::path> dirs;
  if (const char* env = std::getenv("DLBMT_SCENARIO_DIR")) {
    dirs.emplace_back(env);
  }
  std::error_code ec;
  fs::path exe = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    dirs.push_back(exe.parent_path().parent_path() / "share" / "dlbmt" /
                   "scenarios");
  }
#ifdef DLBMT_BUNDLED_SCENARIO_DIR
  dirs.emplace_back(DLBMT_BUNDLED_SCENARIO_DIR);
#endif

  for (const auto& dir : dirs) {
    for (const auto& candidate :
         {dir / name_or_path, dir / (name_or_path + ".json")}) {
      if (fs::exists(candidate)) {
        return candidate.string();
      }
    }
  }
  throw ParseError("scenario not found: " + name_or_path);
}

} // namespace dlbmt
