#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dlbmt/simulator.hpp"

namespace dlbmt {

// Key/value override applied to the scenario document before it is built,
// addressed by dot path (e.g. "workload.jitter", "thresholds.0").
using Override = std::pair<std::string, std::string>;

Scenario load_scenario(const std::string& path,
                       const std::vector<Override>& overrides = {});

Scenario parse_scenario_text(const std::string& json_text,
                             const std::string& origin = "<string>",
                             const std::vector<Override>& overrides = {});

// Resolves a scenario reference: an existing path is used as-is, otherwise
// the name (with .json appended if needed) is searched in
// $DLBMT_SCENARIO_DIR, next to the executable's ../share/dlbmt/scenarios,
// and finally in the build-tree scenario directory.
std::string resolve_scenario_path(const std::string& name_or_path);

} // namespace dlbmt
