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

#include "nfvplace/fractional_alloc.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nfvplace/errors.h"

namespace nfvplace {
namespace {

constexpr double kRateClampTol = 1e-9;

// Scales down every node column that exceeds a capacity and then every
// flow row that exceeds its rate, so `x` meets both without tolerance.
AssignmentMatrix Tighten(const Instance& instance, std::span<const double> rates,
                         const AssignmentMatrix& x) {
  std::map<AssignmentMatrix::Key, double> values = x.entries();
  for (NodeIndex v = 0; v < instance.num_nodes(); ++v) {
    double factor = 1.0;
    for (ResourceIndex r = 0; r < instance.num_resources(); ++r) {
      double used = 0.0;
      for (const auto& [key, value] : values) {
        if (key.second == v) used += FlowTotalDemand(instance, key.first, r) * value;
      }
      const double cap = instance.nodes[v].capacity[r];
      if (used > cap) factor = std::min(factor, cap / used);
    }
    if (factor == 1.0) continue;
    for (auto& [key, value] : values) {
      if (key.second == v) value *= factor;
    }
  }
  std::vector<double> sent(instance.num_flows(), 0.0);
  for (const auto& [key, value] : values) sent[key.first] += value;
  for (auto& [key, value] : values) {
    if (sent[key.first] > rates[key.first]) value *= rates[key.first] / sent[key.first];
  }
  AssignmentMatrix out;
  for (const auto& [key, value] : values) out.Set(key.first, key.second, value);
  return out;
}

// Per-flow unit demand matrix, flow-major.
std::vector<double> DemandTable(const Instance& instance) {
  const std::size_t num_r = instance.num_resources();
  std::vector<double> table(instance.num_flows() * num_r);
  for (FlowIndex f = 0; f < instance.num_flows(); ++f) {
    for (ResourceIndex r = 0; r < num_r; ++r) {
      table[f * num_r + r] = FlowTotalDemand(instance, f, r);
    }
  }
  return table;
}

// Columns for every (flow, node) with node on the flow's path and in `mask`.
// Returns the column list and, per flow, its column indices.
struct Columns {
  std::vector<AssignmentMatrix::Key> keys;
  std::vector<std::vector<std::size_t>> by_flow;
  std::vector<std::vector<std::size_t>> by_node;
};

Columns OnPathColumns(const Instance& instance, const std::vector<char>& mask) {
  Columns cols;
  cols.by_flow.resize(instance.num_flows());
  cols.by_node.resize(instance.num_nodes());
  for (FlowIndex f = 0; f < instance.num_flows(); ++f) {
    for (NodeIndex v : instance.flows[f].path) {
      if (!mask[v]) continue;
      const bool seen = std::any_of(
          cols.by_flow[f].begin(), cols.by_flow[f].end(),
          [&](std::size_t c) { return cols.keys[c].second == v; });
      if (seen) continue;
      cols.by_flow[f].push_back(cols.keys.size());
      cols.by_node[v].push_back(cols.keys.size());
      cols.keys.emplace_back(f, v);
    }
  }
  return cols;
}

void AddRateAndCapacityRows(const Instance& instance, const Columns& cols,
                            const std::vector<NodeIndex>& nodes,
                            std::span<const double> rates, LinearProgram& lp,
                            std::size_t& rate_rows, std::size_t& cap_rows) {
  const std::size_t n = cols.keys.size();
  const std::size_t num_r = instance.num_resources();
  const std::vector<double> demand = DemandTable(instance);
  for (FlowIndex f = 0; f < instance.num_flows(); ++f) {
    if (cols.by_flow[f].empty()) continue;
    std::vector<double> row(n, 0.0);
    for (std::size_t c : cols.by_flow[f]) row[c] = 1.0;
    lp.AddLeq(std::move(row), rates[f]);
    ++rate_rows;
  }
  for (NodeIndex v : nodes) {
    if (cols.by_node[v].empty()) continue;
    for (ResourceIndex r = 0; r < num_r; ++r) {
      std::vector<double> row(n, 0.0);
      for (std::size_t c : cols.by_node[v]) {
        row[c] = demand[cols.keys[c].first * num_r + r];
      }
      lp.AddLeq(std::move(row), instance.nodes[v].capacity[r]);
      ++cap_rows;
    }
  }
}

void CheckRates(const Instance& instance, std::span<const double> rates) {
  if (rates.size() != instance.num_flows()) {
    throw InvalidRates("expected one rate per flow");
  }
}

LpSolution SolveOrFail(const LinearProgram& lp, const char* what) {
  LpSolution sol = Solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw NumericalFailure(std::string(what) + " LP is " + ToString(sol.status));
  }
  return sol;
}

}  // namespace

void AssignmentMatrix::Set(FlowIndex f, NodeIndex v, double x) {
  if (x > 0.0) {
    entries_[{f, v}] = x;
  } else {
    entries_.erase({f, v});
  }
}

double AssignmentMatrix::Get(FlowIndex f, NodeIndex v) const {
  auto it = entries_.find({f, v});
  return it == entries_.end() ? 0.0 : it->second;
}

double AssignmentMatrix::FlowTotal(FlowIndex f) const {
  double total = 0.0;
  for (auto it = entries_.lower_bound({f, 0});
       it != entries_.end() && it->first.first == f; ++it) {
    total += it->second;
  }
  return total;
}

double AssignmentMatrix::NodeTotal(NodeIndex v) const {
  double total = 0.0;
  for (const auto& [key, x] : entries_) {
    if (key.second == v) total += x;
  }
  return total;
}

double AssignmentMatrix::Total() const {
  double total = 0.0;
  for (const auto& [key, x] : entries_) total += x;
  return total;
}

std::vector<double> AssignmentMatrix::FlowTotals(std::size_t num_flows) const {
  std::vector<double> totals(num_flows, 0.0);
  for (const auto& [key, x] : entries_) totals.at(key.first) += x;
  return totals;
}

std::optional<std::string> FindAssignmentViolation(
    const Instance& instance, const AssignmentMatrix& x, double tolerance,
    std::optional<std::span<const double>> rates) {
  const std::vector<double> own_rates = InstanceRates(instance);
  const std::span<const double> caps = rates ? *rates : std::span(own_rates);
  std::vector<std::vector<double>> load(
      instance.num_nodes(), std::vector<double>(instance.num_resources(), 0.0));
  for (const auto& [key, value] : x.entries()) {
    const auto [f, v] = key;
    const auto& path = instance.flows.at(f).path;
    if (std::find(path.begin(), path.end(), v) == path.end()) {
      return "flow '" + instance.flows[f].id + "' assigned off its path";
    }
    if (value < -tolerance) return "negative assignment";
    for (ResourceIndex r = 0; r < instance.num_resources(); ++r) {
      load[v][r] += FlowTotalDemand(instance, f, r) * value;
    }
  }
  const std::vector<double> totals = x.FlowTotals(instance.num_flows());
  for (FlowIndex f = 0; f < instance.num_flows(); ++f) {
    if (totals[f] > caps[f] + tolerance * std::max(1.0, caps[f])) {
      return "flow '" + instance.flows[f].id + "' exceeds its rate";
    }
  }
  for (NodeIndex v = 0; v < instance.num_nodes(); ++v) {
    for (ResourceIndex r = 0; r < instance.num_resources(); ++r) {
      const double c = instance.nodes[v].capacity[r];
      if (load[v][r] > c + tolerance * std::max(1.0, c)) {
        return "node '" + instance.nodes[v].id + "' exceeds resource '" +
               instance.resources[r] + "'";
      }
    }
  }
  return std::nullopt;
}

NodeSequence Deduplicate(const NodeSequence& sequence) {
  NodeSequence out;
  for (NodeIndex v : sequence) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

std::vector<double> InstanceRates(const Instance& instance) {
  std::vector<double> rates;
  rates.reserve(instance.num_flows());
  for (const Flow& f : instance.flows) rates.push_back(f.rate);
  return rates;
}

NodeLp BuildNodeLp(const Instance& instance, const NodeSequence& sequence,
                   const NodeTotals& totals, std::size_t position) {
  const std::vector<double> rates = InstanceRates(instance);
  return BuildNodeLp(instance, sequence, totals, position, rates);
}

NodeLp BuildNodeLp(const Instance& instance, const NodeSequence& sequence,
                   const NodeTotals& totals, std::size_t position,
                   std::span<const double> rates) {
  if (position >= sequence.size()) {
    throw IndexOutOfRange("position " + std::to_string(position) +
                          " outside a sequence of length " +
                          std::to_string(sequence.size()));
  }
  if (totals.size() != sequence.size()) {
    throw IndexOutOfRange("totals length differs from sequence length");
  }
  CheckRates(instance, rates);
  std::vector<char> mask(instance.num_nodes(), 0);
  for (NodeIndex v : sequence) mask.at(v) = 1;
  const Columns cols = OnPathColumns(instance, mask);

  NodeLp out;
  out.variables = cols.keys;
  const std::size_t n = cols.keys.size();
  out.lp = LinearProgram(n);
  for (std::size_t c : cols.by_node[sequence[position]]) out.lp.objective[c] = 1.0;
  AddRateAndCapacityRows(instance, cols, sequence, rates, out.lp,
                         out.num_rate_rows, out.num_capacity_rows);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (i == position) continue;
    std::vector<double> row(n, 0.0);
    for (std::size_t c : cols.by_node[sequence[i]]) row[c] = 1.0;
    out.lp.AddEq(std::move(row), totals[i]);
  }
  return out;
}

AssignmentMatrix ToAssignment(const NodeLp& node_lp, const LpSolution& solution) {
  AssignmentMatrix x;
  for (std::size_t c = 0; c < node_lp.variables.size(); ++c) {
    const auto [f, v] = node_lp.variables[c];
    x.Set(f, v, solution.values[c]);
  }
  return x;
}

SequenceAllocation IterativeAllocation(const Instance& instance,
                                       const NodeSequence& sequence) {
  const std::vector<double> rates = InstanceRates(instance);
  return IterativeAllocation(instance, sequence, rates);
}

SequenceAllocation IterativeAllocation(const Instance& instance,
                                       const NodeSequence& sequence,
                                       std::span<const double> rates) {
  CheckRates(instance, rates);
  SequenceAllocation result;
  for (NodeIndex v : Deduplicate(sequence)) {
    result = ExtendAllocation(instance, result, v, rates);
  }
  return result;
}

SequenceAllocation ExtendAllocation(const Instance& instance,
                                    const SequenceAllocation& prefix,
                                    NodeIndex node) {
  const std::vector<double> rates = InstanceRates(instance);
  return ExtendAllocation(instance, prefix, node, rates);
}

SequenceAllocation ExtendAllocation(const Instance& instance,
                                    const SequenceAllocation& prefix,
                                    NodeIndex node,
                                    std::span<const double> rates) {
  CheckRates(instance, rates);
  if (node >= instance.num_nodes()) {
    throw IndexOutOfRange("node index " + std::to_string(node));
  }
  const auto& seq = prefix.sequence;
  if (std::find(seq.begin(), seq.end(), node) != seq.end()) return prefix;
  if (prefix.node_totals.size() != seq.size()) {
    throw IndexOutOfRange("prefix allocation lacks node totals");
  }

  SequenceAllocation result;
  result.sequence = seq;
  result.sequence.push_back(node);
  NodeTotals pinned = prefix.node_totals;
  pinned.push_back(0.0);
  const std::size_t last = seq.size();
  const NodeLp node_lp =
      BuildNodeLp(instance, result.sequence, pinned, last, rates);
  const LpSolution sol = SolveOrFail(node_lp.lp, "node allocation");
  result.assignment = Tighten(instance, rates, ToAssignment(node_lp, sol));

  const std::size_t m = result.sequence.size();
  result.node_totals.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    result.node_totals[i] = result.assignment.NodeTotal(result.sequence[i]);
    result.value += result.node_totals[i];
  }
  return result;
}

double R4WithRates(const Instance& instance, const NodeSequence& sequence,
                   std::span<const double> rates) {
  CheckRates(instance, rates);
  std::vector<double> clamped(rates.begin(), rates.end());
  for (FlowIndex f = 0; f < instance.num_flows(); ++f) {
    const double cap = instance.flows[f].rate;
    double& x = clamped[f];
    if (!std::isfinite(x) || x < -kRateClampTol ||
        x > cap + kRateClampTol * std::max(1.0, cap)) {
      throw InvalidRates("rate of flow '" + instance.flows[f].id +
                         "' outside [0, lambda]");
    }
    x = std::clamp(x, 0.0, cap);
  }
  return IterativeAllocation(instance, sequence, clamped).value;
}

SetAllocation FullFractionalAllocation(const Instance& instance,
                                       const NodeSet& nodes) {
  const std::vector<double> rates = InstanceRates(instance);
  return FullFractionalAllocation(instance, nodes, rates);
}

SetAllocation FullFractionalAllocation(const Instance& instance,
                                       const NodeSet& nodes,
                                       std::span<const double> rates) {
  CheckRates(instance, rates);
  SetAllocation result;
  result.nodes = MakeNodeSet(nodes);
  if (result.nodes.empty()) return result;
  std::vector<char> mask(instance.num_nodes(), 0);
  for (NodeIndex v : result.nodes) mask.at(v) = 1;
  const Columns cols = OnPathColumns(instance, mask);
  NodeLp node_lp;
  node_lp.variables = cols.keys;
  node_lp.lp = LinearProgram(cols.keys.size());
  std::fill(node_lp.lp.objective.begin(), node_lp.lp.objective.end(), 1.0);
  AddRateAndCapacityRows(instance, cols, result.nodes, rates, node_lp.lp,
                         node_lp.num_rate_rows, node_lp.num_capacity_rows);
  const LpSolution sol = SolveOrFail(node_lp.lp, "set allocation");
  result.assignment = ToAssignment(node_lp, sol);
  result.value = result.assignment.Total();
  return result;
}

}  // namespace nfvplace
