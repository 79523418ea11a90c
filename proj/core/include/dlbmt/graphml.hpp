#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dlbmt {

struct GraphMlGraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
};

// Minimal GraphML reader: <node id="..."> and <edge source="..."
// target="..."> elements only. Throws ParseError on anything unreadable.
GraphMlGraph parse_graphml(const std::string& xml);

// Emits the native scenario grammar for an imported graph: nodes and edges
// filled in, controllers/switches left empty for the author to complete.
std::string graphml_to_scenario_json(const std::string& xml);

} // namespace dlbmt
