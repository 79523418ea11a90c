#include "dlbmt/topology.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

namespace dlbmt {

NetworkGraph::NetworkGraph(
    std::vector<std::string> nodes,
    std::vector<std::pair<std::string, std::string>> edges) {
  node_ids_ = std::move(nodes);
  for (int i = 0; i < static_cast<int>(node_ids_.size()); ++i) {
    if (!index_.emplace(node_ids_[i], i).second) {
      throw ValidationError("duplicate node id: " + node_ids_[i]);
    }
  }
  adj_.assign(node_ids_.size(), {});

  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : edges) {
    auto ia = index_.find(a);
    auto ib = index_.find(b);
    if (ia == index_.end() || ib == index_.end()) {
      throw ValidationError("edge references unknown node: " + a + " - " + b);
    }
    int u = ia->second, v = ib->second;
    if (u == v) {
      throw ValidationError("self-loop edge on node: " + a);
    }
    auto key = std::minmax(u, v);
    if (!seen.insert({key.first, key.second}).second) {
      throw ValidationError("duplicate edge: " + a + " - " + b);
    }
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++edge_count_;
  }
  for (auto& nbrs : adj_) {
    std::sort(nbrs.begin(), nbrs.end());
  }

  if (!node_ids_.empty()) {
    std::vector<char> visited(node_ids_.size(), 0);
    std::deque<int> queue{0};
    visited[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : adj_[u]) {
        if (!visited[v]) {
          visited[v] = 1;
          ++reached;
          queue.push_back(v);
        }
      }
    }
    if (reached != static_cast<int>(node_ids_.size())) {
      throw ValidationError("graph not connected (" + std::to_string(reached) +
                            " of " + std::to_string(node_ids_.size()) +
                            " nodes reachable)");
    }
  }
}

bool NetworkGraph::has_node(const std::string& id) const {
  return index_.count(id) != 0;
}

int NetworkGraph::node_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw NodeNotFound("node not found: " + id);
  }
  return it->second;
}

namespace {

void bfs_from(const NetworkGraph& g, int start, std::vector<int>& dist) {
  dist.assign(g.node_count(), -1);
  dist[start] = 0;
  std::deque<int> queue{start};
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
}

} // namespace

int hop_distance(const NetworkGraph& g, const std::string& u,
                 const std::string& v) {
  int su = g.node_index(u);
  int sv = g.node_index(v);
  if (su == sv) {
    return 0;
  }
  std::vector<int> dist;
  bfs_from(g, su, dist);
  return dist[sv]; // connected graph, never -1
}

HopMatrix::HopMatrix(const NetworkGraph& g) : n_(g.node_count()) {
  table_.resize(static_cast<size_t>(n_) * n_);
  std::vector<int> dist;
  for (int u = 0; u < n_; ++u) {
    bfs_from(g, u, dist);
    std::copy(dist.begin(), dist.end(),
              table_.begin() + static_cast<size_t>(u) * n_);
  }
}

HopMatrix::HopMatrix(int n, std::vector<int> table)
    : n_(n), table_(std::move(table)) {
  if (table_.size() != static_cast<size_t>(n_) * n_) {
    throw ValidationError("hop table size does not match node count");
  }
}

DomainAssignment assign_initial_domains(
    const NetworkGraph& g, const std::vector<ControllerSpec>& controllers,
    const std::vector<SwitchSpec>& switches) {
  std::vector<const ControllerSpec*> active;
  for (const auto& c : controllers) {
    if (c.initially_active) {
      active.push_back(&c);
    }
  }
  if (active.empty()) {
    throw NoActiveController("no active controller to assign switches to");
  }

  // One BFS per active controller; switches then pick the closest site.
  std::vector<std::vector<int>> dist(active.size());
  for (size_t j = 0; j < active.size(); ++j) {
    bfs_from(g, g.node_index(active[j]->site), dist[j]);
  }

  DomainAssignment assignment;
  for (const auto& sw : switches) {
    int site = g.node_index(sw.site);
    int best = -1;
    int best_dist = std::numeric_limits<int>::max();
    for (size_t j = 0; j < active.size(); ++j) {
      int d = dist[j][site];
      if (d < best_dist ||
          (d == best_dist && active[j]->id < active[best]->id)) {
        best = static_cast<int>(j);
        best_dist = d;
      }
    }
    assignment.owner[sw.id] = active[best]->id;
  }
  return assignment;
}

void validate_assignment(const DomainAssignment& assignment,
                         const std::vector<ControllerSpec>& controllers,
                         const std::vector<SwitchSpec>& switches) {
  std::set<std::string> active_ids;
  for (const auto& c : controllers) {
    if (c.initially_active) {
      active_ids.insert(c.id);
    }
  }
  for (const auto& sw : switches) {
    auto it = assignment.owner.find(sw.id);
    if (it == assignment.owner.end()) {
      throw ValidationError("switch not assigned: " + sw.id);
    }
    if (!active_ids.count(it->second)) {
      throw ValidationError("switch " + sw.id +
                            " assigned to a controller that is not active: " +
                            it->second);
    }
  }
  if (assignment.owner.size() != switches.size()) {
    throw ValidationError("assignment maps unknown switches");
  }
}

} // namespace dlbmt
