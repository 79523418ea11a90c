#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dlbmt/errors.hpp"
#include "dlbmt/load_model.hpp"

namespace dlbmt {

// Undirected, connected physical topology. Edges have unit hop weight.
// Immutable after construction; safe to share read-only across threads.
class NetworkGraph {
public:
  NetworkGraph() = default;

  // Validates: no self loops, no duplicate edges, all endpoints known,
  // graph connected. Throws ValidationError otherwise.
  NetworkGraph(std::vector<std::string> nodes,
               std::vector<std::pair<std::string, std::string>> edges);

  int node_count() const { return static_cast<int>(node_ids_.size()); }
  int edge_count() const { return edge_count_; }

  bool has_node(const std::string& id) const;
  int node_index(const std::string& id) const; // throws NodeNotFound
  const std::string& node_id(int index) const { return node_ids_.at(index); }
  const std::vector<int>& neighbors(int index) const { return adj_.at(index); }

private:
  std::vector<std::string> node_ids_;
  std::map<std::string, int> index_;
  std::vector<std::vector<int>> adj_;
  int edge_count_ = 0;
};

// Shortest-path length in edges between two nodes (single BFS).
int hop_distance(const NetworkGraph& g, const std::string& u,
                 const std::string& v);

// All-pairs hop distance table, one BFS per node. The planner and the
// simulator query this instead of re-running BFS.
class HopMatrix {
public:
  HopMatrix() = default;
  explicit HopMatrix(const NetworkGraph& g);

  // Test/benchmark constructor from an explicit table (row-major, n*n).
  HopMatrix(int n, std::vector<int> table);

  int size() const { return n_; }
  int at(int u, int v) const { return table_[static_cast<size_t>(u) * n_ + v]; }

private:
  int n_ = 0;
  std::vector<int> table_;
};

struct ControllerSpec {
  std::string id;
  std::string site;
  CapacityVector capacity;
  bool initially_active = true;
  double background_load = 0.0; // constant LR offset in percent points
};

struct SwitchSpec {
  std::string id;
  std::string site;
};

// Total mapping switch id -> controller id. Every switch maps to exactly
// one active controller.
struct DomainAssignment {
  std::map<std::string, std::string> owner;
};

// Nearest active controller by hop count, ties to the lower controller id
// (lexicographic). Deterministic. Throws NoActiveController.
DomainAssignment assign_initial_domains(const NetworkGraph& g,
                                        const std::vector<ControllerSpec>& controllers,
                                        const std::vector<SwitchSpec>& switches);

// Checks the totality invariant of an assignment against the fleet spec.
void validate_assignment(const DomainAssignment& assignment,
                         const std::vector<ControllerSpec>& controllers,
                         const std::vector<SwitchSpec>& switches);

struct TopologyBundle {
  NetworkGraph graph;
  std::vector<ControllerSpec> controllers;
  std::vector<SwitchSpec> switches;
};

// Parses the scenario-file grammar and returns the validated topology part.
// Throws ParseError on malformed input, ValidationError on bad structure.
TopologyBundle load_topology(const std::string& path);

} // namespace dlbmt
