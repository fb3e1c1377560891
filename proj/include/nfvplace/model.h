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

// Network model: nodes with multi-resource capacities, flows routed along
// fixed paths, and network functions with per-resource unit demands.
//
// Entities refer to each other by position (NodeIndex, FlowIndex, ...) inside
// an Instance; string ids exist for I/O and deterministic tie-breaking.

#ifndef NFVPLACE_MODEL_H_
#define NFVPLACE_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nfvplace {

using NodeIndex = std::size_t;
using FlowIndex = std::size_t;
using FunctionIndex = std::size_t;
using ResourceIndex = std::size_t;

// Ordered selection of nodes (a placement sequence).
using NodeSequence = std::vector<NodeIndex>;
// Unordered selection of nodes, kept sorted and duplicate-free.
using NodeSet = std::vector<NodeIndex>;

struct NetworkFunction {
  std::string id;
  // Resource units consumed per unit of processed traffic, one entry per
  // instance resource.
  std::vector<double> unit_demand;
};

struct Node {
  std::string id;
  std::vector<double> capacity;  // one entry per instance resource
};

struct Edge {
  NodeIndex u = 0;
  NodeIndex v = 0;
  double cost = 1.0;
};

struct Flow {
  std::string id;
  NodeIndex src = 0;
  NodeIndex dst = 0;
  double rate = 0.0;
  std::vector<FunctionIndex> functions;
  // Nodes traversed from src to dst; empty until paths are computed.
  std::vector<NodeIndex> path;
};

struct Instance {
  std::vector<std::string> resources;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<NetworkFunction> functions;
  std::vector<Flow> flows;

  std::size_t num_resources() const { return resources.size(); }
  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t num_flows() const { return flows.size(); }

  // Lookups by id; throw UnknownId.
  NodeIndex node_index(const std::string& id) const;
  FlowIndex flow_index(const std::string& id) const;
  ResourceIndex resource_index(const std::string& id) const;
  FunctionIndex function_index(const std::string& id) const;

  double total_rate() const;
};

enum class PathMetric { kRoutingCost, kHopCount };

// Checks graph-level invariants only: unique node ids, edge endpoints in
// range, non-negative costs, flow endpoints in range, positive rates, and
// any present path being a walk from src to dst. Throws ValidationError.
void ValidateTopology(const Instance& instance);

// Full invariant check: topology plus resources, capacities, functions, and
// every flow having a non-empty function set and a path. Throws
// ValidationError.
void Validate(const Instance& instance);

// Shortest path for every flow. Ties are broken by the lexicographically
// smallest node-id sequence. Throws UnreachablePair.
Instance ComputePaths(Instance instance, PathMetric metric);

// As ComputePaths, but keeps paths that are already present.
Instance FillMissingPaths(Instance instance, PathMetric metric);

// Total units of resource `r` needed to process one unit of flow `f`: the sum
// of the unit demands of its functions.
double FlowTotalDemand(const Instance& instance, FlowIndex f, ResourceIndex r);
double FlowTotalDemand(const Instance& instance, const std::string& flow_id,
                       const std::string& resource_id);

// Flows whose path contains at least one node of `nodes`, in index order.
std::vector<FlowIndex> CoveredFlows(const Instance& instance,
                                    const NodeSet& nodes);

// Builds a NodeSet from arbitrary indices (sort + unique).
NodeSet MakeNodeSet(std::vector<NodeIndex> nodes);

// Largest total demand of any flow on any resource (delta * rate).
double MaxFlowDemand(const Instance& instance);

}  // namespace nfvplace

#endif  // NFVPLACE_MODEL_H_
