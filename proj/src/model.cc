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

#include "nfvplace/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "nfvplace/errors.h"

namespace nfvplace {
namespace {

template <typename T>
std::size_t FindById(const std::vector<T>& items, const std::string& id,
                     const char* what) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].id == id) return i;
  }
  throw UnknownId(std::string(what) + " '" + id + "'");
}

std::vector<std::vector<std::pair<NodeIndex, double>>> Adjacency(
    const Instance& instance, PathMetric metric) {
  std::vector<std::vector<std::pair<NodeIndex, double>>> adj(
      instance.num_nodes());
  for (const Edge& e : instance.edges) {
    const double w = metric == PathMetric::kHopCount ? 1.0 : e.cost;
    adj[e.u].emplace_back(e.v, w);
    adj[e.v].emplace_back(e.u, w);
  }
  return adj;
}

bool Adjacent(const std::vector<std::vector<std::pair<NodeIndex, double>>>& adj,
              NodeIndex a, NodeIndex b) {
  for (const auto& [w, cost] : adj[a]) {
    if (w == b) return true;
  }
  return false;
}

bool NearlyEqual(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Single-target shortest-path labels: cost to `dst`, then the fewest hops
// among cost-minimal paths. The hop label keeps zero-cost cycles from being
// followed when a path is read off the labels.
struct Labels {
  std::vector<double> cost;
  std::vector<std::size_t> hops;
};

Labels ShortestLabelsTo(
    const std::vector<std::vector<std::pair<NodeIndex, double>>>& adj,
    NodeIndex dst) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t n = adj.size();
  Labels labels{std::vector<double>(n, inf),
                std::vector<std::size_t>(n, std::numeric_limits<std::size_t>::max())};
  using Entry = std::tuple<double, std::size_t, NodeIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  labels.cost[dst] = 0.0;
  labels.hops[dst] = 0;
  queue.emplace(0.0, 0, dst);
  while (!queue.empty()) {
    auto [c, h, u] = queue.top();
    queue.pop();
    if (c > labels.cost[u] || (c == labels.cost[u] && h > labels.hops[u])) {
      continue;
    }
    for (const auto& [w, weight] : adj[u]) {
      const double nc = c + weight;
      const std::size_t nh = h + 1;
      if (nc < labels.cost[w] && !NearlyEqual(nc, labels.cost[w])) {
        labels.cost[w] = nc;
        labels.hops[w] = nh;
        queue.emplace(nc, nh, w);
      } else if (NearlyEqual(nc, labels.cost[w]) && nh < labels.hops[w]) {
        labels.cost[w] = std::min(nc, labels.cost[w]);
        labels.hops[w] = nh;
        queue.emplace(labels.cost[w], nh, w);
      }
    }
  }
  return labels;
}

std::vector<NodeIndex> ShortestPath(
    const Instance& instance,
    const std::vector<std::vector<std::pair<NodeIndex, double>>>& adj,
    const Flow& flow) {
  if (flow.src == flow.dst) return {flow.src};
  const Labels labels = ShortestLabelsTo(adj, flow.dst);
  if (std::isinf(labels.cost[flow.src])) {
    throw UnreachablePair("flow '" + flow.id + "': no path from '" +
                          instance.nodes[flow.src].id + "' to '" +
                          instance.nodes[flow.dst].id + "'");
  }
  // Greedily taking the smallest-id successor that stays on a shortest path
  // yields the lexicographically smallest id sequence among shortest paths.
  std::vector<NodeIndex> path{flow.src};
  NodeIndex u = flow.src;
  while (u != flow.dst) {
    std::optional<NodeIndex> next;
    for (const auto& [w, weight] : adj[u]) {
      if (labels.hops[w] + 1 != labels.hops[u]) continue;
      if (!NearlyEqual(weight + labels.cost[w], labels.cost[u])) continue;
      if (!next || instance.nodes[w].id < instance.nodes[*next].id) next = w;
    }
    if (!next) {
      throw UnreachablePair("flow '" + flow.id + "': inconsistent labels");
    }
    u = *next;
    path.push_back(u);
  }
  return path;
}

}  // namespace

NodeIndex Instance::node_index(const std::string& id) const {
  return FindById(nodes, id, "node");
}

FlowIndex Instance::flow_index(const std::string& id) const {
  return FindById(flows, id, "flow");
}

FunctionIndex Instance::function_index(const std::string& id) const {
  return FindById(functions, id, "function");
}

ResourceIndex Instance::resource_index(const std::string& id) const {
  for (std::size_t r = 0; r < resources.size(); ++r) {
    if (resources[r] == id) return r;
  }
  throw UnknownId("resource '" + id + "'");
}

double Instance::total_rate() const {
  double total = 0.0;
  for (const Flow& f : flows) total += f.rate;
  return total;
}

void ValidateTopology(const Instance& instance) {
  const std::size_t n = instance.num_nodes();
  std::set<std::string> ids;
  for (const Node& node : instance.nodes) {
    if (!ids.insert(node.id).second) {
      throw ValidationError("duplicate node id '" + node.id + "'");
    }
  }
  for (const Edge& e : instance.edges) {
    if (e.u >= n || e.v >= n) throw ValidationError("edge endpoint out of range");
    if (!(e.cost >= 0.0) || !std::isfinite(e.cost)) {
      throw ValidationError("edge cost must be finite and non-negative");
    }
  }
  const auto adj = Adjacency(instance, PathMetric::kHopCount);
  std::set<std::string> flow_ids;
  for (const Flow& f : instance.flows) {
    if (!flow_ids.insert(f.id).second) {
      throw ValidationError("duplicate flow id '" + f.id + "'");
    }
    if (f.src >= n || f.dst >= n) {
      throw ValidationError("flow '" + f.id + "' endpoint out of range");
    }
    if (!(f.rate > 0.0) || !std::isfinite(f.rate)) {
      throw ValidationError("flow '" + f.id + "' rate must be positive");
    }
    if (f.path.empty()) continue;
    if (f.path.front() != f.src || f.path.back() != f.dst) {
      throw ValidationError("flow '" + f.id + "' path endpoints differ from src/dst");
    }
    for (std::size_t i = 0; i < f.path.size(); ++i) {
      if (f.path[i] >= n) {
        throw ValidationError("flow '" + f.id + "' path node out of range");
      }
      if (i > 0 && !Adjacent(adj, f.path[i - 1], f.path[i])) {
        throw ValidationError("flow '" + f.id + "' path uses a missing edge");
      }
    }
  }
}

void Validate(const Instance& instance) {
  ValidateTopology(instance);
  const std::size_t num_r = instance.num_resources();
  if (num_r == 0) throw ValidationError("instance has no resources");
  std::set<std::string> rids(instance.resources.begin(),
                             instance.resources.end());
  if (rids.size() != num_r) throw ValidationError("duplicate resource id");
  for (const Node& node : instance.nodes) {
    if (node.capacity.size() != num_r) {
      throw ValidationError("node '" + node.id + "' capacity size mismatch");
    }
    for (double c : node.capacity) {
      if (!(c >= 0.0) || !std::isfinite(c)) {
        throw ValidationError("node '" + node.id + "' has a negative capacity");
      }
    }
  }
  std::set<std::string> fids;
  for (const NetworkFunction& fn : instance.functions) {
    if (!fids.insert(fn.id).second) {
      throw ValidationError("duplicate function id '" + fn.id + "'");
    }
    if (fn.unit_demand.size() != num_r) {
      throw ValidationError("function '" + fn.id + "' demand size mismatch");
    }
    for (double b : fn.unit_demand) {
      if (!(b >= 0.0) || !std::isfinite(b)) {
        throw ValidationError("function '" + fn.id + "' has a negative demand");
      }
    }
  }
  for (const Flow& f : instance.flows) {
    if (f.functions.empty()) {
      throw ValidationError("flow '" + f.id + "' requires no function");
    }
    for (FunctionIndex fn : f.functions) {
      if (fn >= instance.functions.size()) {
        throw ValidationError("flow '" + f.id + "' references unknown function");
      }
    }
    if (f.path.empty()) {
      throw ValidationError("flow '" + f.id + "' has no path");
    }
  }
}

Instance ComputePaths(Instance instance, PathMetric metric) {
  for (Flow& f : instance.flows) f.path.clear();
  return FillMissingPaths(std::move(instance), metric);
}

Instance FillMissingPaths(Instance instance, PathMetric metric) {
  const auto adj = Adjacency(instance, metric);
  for (Flow& f : instance.flows) {
    if (f.path.empty()) f.path = ShortestPath(instance, adj, f);
  }
  return instance;
}

double FlowTotalDemand(const Instance& instance, FlowIndex f, ResourceIndex r) {
  if (f >= instance.num_flows()) throw UnknownId("flow index out of range");
  if (r >= instance.num_resources()) {
    throw UnknownId("resource index out of range");
  }
  double total = 0.0;
  for (FunctionIndex fn : instance.flows[f].functions) {
    total += instance.functions.at(fn).unit_demand.at(r);
  }
  return total;
}

double FlowTotalDemand(const Instance& instance, const std::string& flow_id,
                       const std::string& resource_id) {
  return FlowTotalDemand(instance, instance.flow_index(flow_id),
                         instance.resource_index(resource_id));
}

std::vector<FlowIndex> CoveredFlows(const Instance& instance,
                                    const NodeSet& nodes) {
  std::vector<char> in_set(instance.num_nodes(), 0);
  for (NodeIndex v : nodes) in_set.at(v) = 1;
  std::vector<FlowIndex> covered;
  for (FlowIndex f = 0; f < instance.num_flows(); ++f) {
    for (NodeIndex v : instance.flows[f].path) {
      if (in_set[v]) {
        covered.push_back(f);
        break;
      }
    }
  }
  return covered;
}

NodeSet MakeNodeSet(std::vector<NodeIndex> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

double MaxFlowDemand(const Instance& instance) {
  double d_max = 0.0;
  for (FlowIndex f = 0; f < instance.num_flows(); ++f) {
    for (ResourceIndex r = 0; r < instance.num_resources(); ++r) {
      d_max = std::max(d_max,
                       FlowTotalDemand(instance, f, r) * instance.flows[f].rate);
    }
  }
  return d_max;
}

}  // namespace nfvplace
