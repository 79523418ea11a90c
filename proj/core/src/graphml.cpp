#include "dlbmt/graphml.hpp"

#include <json.hpp>

#include "dlbmt/errors.hpp"

namespace dlbmt {

namespace {

// Attribute value inside the element text, e.g. attr_value(s, "id").
std::string attr_value(const std::string& element, const std::string& name,
                       bool required) {
  std::string needle = name + "=\"";
  size_t pos = element.find(needle);
  if (pos == std::string::npos) {
    needle = name + "='";
    pos = element.find(needle);
  }
  if (pos == std::string::npos) {
    if (required) {
      throw ParseError("graphml element missing attribute \"" + name +
                       "\": " + element);
    }
    return {};
  }
  char quote = element[pos + needle.size() - 1];
  size_t start = pos + needle.size();
  size_t end = element.find(quote, start);
  if (end == std::string::npos) {
    throw ParseError("unterminated attribute in graphml element: " + element);
  }
  return element.substr(start, end - start);
}

} // namespace

GraphMlGraph parse_graphml(const std::string& xml) {
  GraphMlGraph out;
  size_t pos = 0;
  while ((pos = xml.find('<', pos)) != std::string::npos) {
    size_t end = xml.find('>', pos);
    if (end == std::string::npos) {
      throw ParseError("unterminated tag in graphml input");
    }
    std::string element = xml.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (element.rfind("node", 0) == 0 &&
        (element.size() == 4 || !isalnum(static_cast<unsigned char>(element[4])))) {
      out.nodes.push_back(attr_value(element, "id", true));
    } else if (element.rfind("edge", 0) == 0 &&
               (element.size() == 4 ||
                !isalnum(static_cast<unsigned char>(element[4])))) {
      out.edges.emplace_back(attr_value(element, "source", true),
                             attr_value(element, "target", true));
    }
  }
  if (out.nodes.empty()) {
    throw ParseError("graphml input contains no node elements");
  }
  return out;
}

std::string graphml_to_scenario_json(const std::string& xml) {
  GraphMlGraph graph = parse_graphml(xml);
  nlohmann::json doc;
  doc["nodes"] = graph.nodes;
  doc["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : graph.edges) {
    doc["edges"].push_back({a, b});
  }
  doc["controllers"] = nlohmann::json::array();
  doc["switches"] = nlohmann::json::array();
  return doc.dump(2);
}

} // namespace dlbmt
