// Shared between the unit tests and the acceptance suite: random planning
// instances plus the bridge from the oracle's plain-array representation to
// the library's fleet types.
#pragma once

#include <string>
#include <vector>

#include "dlbmt/migration.hpp"
#include "oracles.hpp"

namespace testutil {

struct ImplInstance {
  dlbmt::FleetState fleet;
  std::vector<dlbmt::ResourceDemand> demands;
  dlbmt::HopMatrix hops;
  dlbmt::Weights weights;
  dlbmt::ThresholdConfig thresholds;
};

inline ImplInstance to_impl(const oracle::Instance& in) {
  ImplInstance out;
  int sites = static_cast<int>(in.dist.size());
  std::vector<int> flat;
  flat.reserve(static_cast<size_t>(sites) * sites);
  for (const auto& row : in.dist) {
    flat.insert(flat.end(), row.begin(), row.end());
  }
  out.hops = dlbmt::HopMatrix(sites, std::move(flat));
  out.weights = {in.wa, in.wb, in.wc};

  for (const auto& c : in.controllers) {
    dlbmt::ControllerState state;
    state.id = c.id;
    state.site = c.site;
    state.capacity = {c.cap_cpu, c.cap_mem, c.cap_bw};
    state.background = c.background;
    state.active = c.active;
    out.fleet.controllers.push_back(std::move(state));
  }
  for (size_t s = 0; s < in.switches.size(); ++s) {
    const auto& sw = in.switches[s];
    out.fleet.switches.push_back({sw.id, sw.site});
    out.demands.push_back({sw.d_cpu, sw.d_mem, sw.d_bw});
    out.fleet.owner.push_back(sw.owner);
    out.fleet.controllers[sw.owner].domain.insert(static_cast<int>(s));
  }
  for (auto& c : out.fleet.controllers) {
    if (c.active) {
      dlbmt::recompute_load(c, out.demands, out.weights);
      c.level = dlbmt::classify(c.load, out.thresholds);
    }
  }
  return out;
}

// Random planning instance: up to 4 controllers, up to 8 switches, random
// capacities/demands/distances. Owners only among active controllers.
inline oracle::Instance random_instance(oracle::Rng& rng) {
  oracle::Instance in;
  int K = rng.range(2, 4);
  int N = rng.range(2, 8);
  int sites = K + N;

  in.dist.assign(sites, std::vector<int>(sites, 0));
  for (int u = 0; u < sites; ++u) {
    for (int v = u + 1; v < sites; ++v) {
      int d = rng.range(0, 4);
      in.dist[u][v] = d;
      in.dist[v][u] = d;
    }
  }

  std::vector<int> active_indices;
  for (int j = 0; j < K; ++j) {
    oracle::Instance::Controller c;
    c.id = "c" + std::to_string(j);
    c.cap_cpu = rng.range(500, 4000);
    c.cap_mem = rng.range(500, 4000);
    c.cap_bw = rng.range(500, 4000);
    c.active = true;
    if (K >= 3 && rng.range(0, 9) == 0 && active_indices.size() + 1 <
                                              static_cast<size_t>(K)) {
      c.active = false; // occasional powered-off spare
    }
    c.background = rng.range(0, 4) == 0 ? rng.real(0.0, 25.0) : 0.0;
    c.site = j;
    if (c.active) {
      active_indices.push_back(j);
    }
    in.controllers.push_back(c);
  }
  if (active_indices.empty()) {
    in.controllers[0].active = true;
    active_indices.push_back(0);
  }

  for (int i = 0; i < N; ++i) {
    oracle::Instance::Switch sw;
    sw.id = "s" + std::to_string(i);
    if (rng.range(0, 11) == 0) {
      sw.d_cpu = sw.d_mem = sw.d_bw = 0.0; // idle switch
    } else {
      sw.d_cpu = rng.real(0.0, 900.0);
      sw.d_mem = rng.real(0.0, 900.0);
      sw.d_bw = rng.real(0.0, 900.0);
    }
    sw.site = K + i;
    sw.owner = active_indices[static_cast<size_t>(
        rng.range(0, static_cast<int>(active_indices.size()) - 1))];
    in.switches.push_back(sw);
  }
  return in;
}

} // namespace testutil
