// Copyright 2026 The nfvplace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nfvplace/generate.h"

#include <array>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nfvplace/errors.h"
#include "nfvplace/random.h"

namespace nfvplace {
namespace {

constexpr std::array<const char*, 12> kAbileneNodes = {
    "ATLAM5", "ATLAng", "CHINng", "DNVRng", "HSTNng", "IPLSng",
    "KSCYng", "LOSAng", "NYCMng", "SNVAng", "STTLng", "WASHng"};

constexpr std::array<std::pair<int, int>, 15> kAbileneLinks = {{
    {0, 1},   // ATLAM5 - ATLAng
    {1, 4},   // ATLAng - HSTNng
    {1, 5},   // ATLAng - IPLSng
    {1, 11},  // ATLAng - WASHng
    {2, 5},   // CHINng - IPLSng
    {2, 8},   // CHINng - NYCMng
    {3, 6},   // DNVRng - KSCYng
    {3, 9},   // DNVRng - SNVAng
    {3, 10},  // DNVRng - STTLng
    {4, 6},   // HSTNng - KSCYng
    {4, 7},   // HSTNng - LOSAng
    {5, 6},   // IPLSng - KSCYng
    {7, 9},   // LOSAng - SNVAng
    {8, 11},  // NYCMng - WASHng
    {9, 10},  // SNVAng - STTLng
}};

double GravityRate(const std::vector<double>& mass, NodeIndex u, NodeIndex w) {
  return 0.1 + 9.9 * mass[u] * mass[w];
}

}  // namespace

Instance GenerateDemands(const Instance& instance, DemandRange range,
                         std::size_t num_resources, double z_stretch,
                         std::uint64_t seed) {
  if (!(range.lo >= 0.0) || !(range.hi >= range.lo)) {
    throw InvalidRange("demand range must satisfy 0 <= lo <= hi");
  }
  if (num_resources < 1) throw InvalidRange("need at least one resource");
  if (!(z_stretch > 1.0)) throw InvalidRange("resource stretch must exceed 1");

  Instance out = instance;
  out.resources.clear();
  for (std::size_t r = 0; r < num_resources; ++r) {
    out.resources.push_back("r" + std::to_string(r + 1));
  }
  out.functions.clear();
  SplitMix64 rng(seed);
  for (FlowIndex f = 0; f < out.num_flows(); ++f) {
    NetworkFunction fn;
    fn.id = "phi_" + out.flows[f].id;
    for (std::size_t r = 0; r < num_resources; ++r) {
      fn.unit_demand.push_back(rng.Uniform(range.lo, range.hi));
    }
    out.functions.push_back(std::move(fn));
    out.flows[f].functions = {f};
  }
  for (Node& node : out.nodes) node.capacity.assign(num_resources, 0.0);
  return ScaleCapacities(out, z_stretch);
}

Instance ScaleCapacities(const Instance& instance, double z_stretch) {
  if (!(z_stretch > 1.0)) throw InvalidRange("resource stretch must exceed 1");
  Instance out = instance;
  const double capacity = z_stretch * MaxFlowDemand(out);
  for (Node& node : out.nodes) {
    node.capacity.assign(out.num_resources(), capacity);
  }
  return out;
}

Topology ParseTopology(const std::string& name) {
  if (name == "line") return Topology::kLine;
  if (name == "ring") return Topology::kRing;
  if (name == "random") return Topology::kRandom;
  if (name == "abilene") return Topology::kAbilene;
  throw ConfigError("unknown topology '" + name + "'");
}

Instance SyntheticTopology(Topology topology, std::size_t num_nodes,
                           std::size_t num_flows, std::uint64_t seed) {
  Instance instance;
  SplitMix64 rng(seed);
  if (topology == Topology::kAbilene) {
    for (const char* id : kAbileneNodes) instance.nodes.push_back({id, {}});
    for (const auto& [u, v] : kAbileneLinks) {
      instance.edges.push_back(
          {static_cast<NodeIndex>(u), static_cast<NodeIndex>(v), 1.0});
    }
    std::vector<double> mass;
    for (std::size_t i = 0; i < kAbileneNodes.size(); ++i) {
      mass.push_back(rng.Uniform());
    }
    for (NodeIndex u = 0; u < kAbileneNodes.size(); ++u) {
      for (NodeIndex w = 0; w < kAbileneNodes.size(); ++w) {
        Flow f;
        f.id = std::string(kAbileneNodes[u]) + "_" + kAbileneNodes[w];
        f.src = u;
        f.dst = w;
        f.rate = GravityRate(mass, u, w);
        instance.flows.push_back(std::move(f));
      }
    }
    return instance;
  }

  if (num_nodes < 2) throw ConfigError("synthetic topologies need >= 2 nodes");
  for (std::size_t i = 0; i < num_nodes; ++i) {
    instance.nodes.push_back({"n" + std::to_string(i), {}});
  }
  std::set<std::pair<NodeIndex, NodeIndex>> present;
  auto add_edge = [&](NodeIndex u, NodeIndex v) {
    if (u == v) return;
    auto key = std::minmax(u, v);
    if (present.insert(key).second) instance.edges.push_back({u, v, 1.0});
  };
  for (NodeIndex i = 0; i + 1 < num_nodes; ++i) add_edge(i, i + 1);
  if (topology != Topology::kLine && num_nodes > 2) add_edge(num_nodes - 1, 0);
  if (topology == Topology::kRandom) {
    const std::size_t chords = num_nodes / 2;
    for (std::size_t c = 0; c < chords; ++c) {
      add_edge(rng.Below(num_nodes), rng.Below(num_nodes));
    }
  }
  std::vector<double> mass;
  for (std::size_t i = 0; i < num_nodes; ++i) mass.push_back(rng.Uniform());
  for (std::size_t i = 0; i < num_flows; ++i) {
    const NodeIndex u = rng.Below(num_nodes);
    NodeIndex w = rng.Below(num_nodes - 1);
    if (w >= u) ++w;
    Flow f;
    f.id = "f" + std::to_string(i);
    f.src = u;
    f.dst = w;
    f.rate = GravityRate(mass, u, w);
    instance.flows.push_back(std::move(f));
  }
  return instance;
}

}  // namespace nfvplace
