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

// Fractional allocation of flow traffic to VNF-nodes.
//
// Two value functions live here. The set value R3(U) is the optimum of one
// LP that spreads traffic over all nodes of U at once. The sequence value
// R4(S) visits the nodes of S in order; at step i it maximizes the traffic
// of node S[i] while pinning the totals already fixed at the other
// positions, then fixes S[i]'s total. Both count partially processed flows.

#ifndef NFVPLACE_FRACTIONAL_ALLOC_H_
#define NFVPLACE_FRACTIONAL_ALLOC_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nfvplace/lp_solver.h"
#include "nfvplace/model.h"

namespace nfvplace {

// Traffic of flow f processed at node v (x_f^v), stored sparsely.
class AssignmentMatrix {
 public:
  using Key = std::pair<FlowIndex, NodeIndex>;

  // Values with |x| <= 0 are dropped.
  void Set(FlowIndex f, NodeIndex v, double x);
  double Get(FlowIndex f, NodeIndex v) const;

  double FlowTotal(FlowIndex f) const;
  double NodeTotal(NodeIndex v) const;
  double Total() const;
  // Per-flow totals for `num_flows` flows.
  std::vector<double> FlowTotals(std::size_t num_flows) const;

  const std::map<Key, double>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<Key, double> entries_;
};

// First violated invariant of `x` (off-path traffic, per-flow rate cap,
// node capacity), or nullopt. `rates` defaults to the instance's rates.
std::optional<std::string> FindAssignmentViolation(
    const Instance& instance, const AssignmentMatrix& x, double tolerance,
    std::optional<std::span<const double>> rates = std::nullopt);

// Per-position totals y_i of a sequence.
using NodeTotals = std::vector<double>;

// Drops later repetitions of a node, keeping the first appearance.
NodeSequence Deduplicate(const NodeSequence& sequence);

std::vector<double> InstanceRates(const Instance& instance);

struct NodeLp {
  LinearProgram lp;
  // Column meaning: (flow, node) of every LP variable. Only on-path pairs
  // get a column, so the zero-off-path family holds by construction.
  std::vector<AssignmentMatrix::Key> variables;
  std::size_t num_rate_rows = 0;
  std::size_t num_capacity_rows = 0;
};

// LP that maximizes the traffic at position `position` (0-based) of
// `sequence` subject to per-flow rate caps over the sequence's nodes, node
// capacities, and sum_f x_f^{S[i]} = totals[i] for every other position.
// `sequence` must be duplicate-free. Throws IndexOutOfRange.
NodeLp BuildNodeLp(const Instance& instance, const NodeSequence& sequence,
                   const NodeTotals& totals, std::size_t position);
NodeLp BuildNodeLp(const Instance& instance, const NodeSequence& sequence,
                   const NodeTotals& totals, std::size_t position,
                   std::span<const double> rates);

// Extracts the assignment encoded by an LP solution.
AssignmentMatrix ToAssignment(const NodeLp& node_lp, const LpSolution& solution);

struct SequenceAllocation {
  NodeSequence sequence;    // deduplicated input
  NodeTotals node_totals;   // column sums of `assignment` per position
  AssignmentMatrix assignment;
  double value = 0.0;       // R4(S), the sum of node_totals
};

// Iterative node-by-node allocation; repeated nodes are deduplicated first.
// While position i is visited every later position is pinned to zero, so
// the step LP is built over the prefix S[0..i] only. Propagates
// NumericalFailure from the LP solver.
SequenceAllocation IterativeAllocation(const Instance& instance,
                                       const NodeSequence& sequence);
SequenceAllocation IterativeAllocation(const Instance& instance,
                                       const NodeSequence& sequence,
                                       std::span<const double> rates);

// Allocation of `prefix.sequence` followed by `node`; solves a single LP
// that holds the node totals of `prefix` fixed. The result is identical to
// IterativeAllocation on the extended sequence. Each step's assignment is
// scaled down where round-off left it above a capacity or rate, so the
// next step starts from an exactly feasible point. Appending a node already
// in the sequence returns `prefix` unchanged.
SequenceAllocation ExtendAllocation(const Instance& instance,
                                    const SequenceAllocation& prefix,
                                    NodeIndex node);
SequenceAllocation ExtendAllocation(const Instance& instance,
                                    const SequenceAllocation& prefix,
                                    NodeIndex node,
                                    std::span<const double> rates);

// R4(S | rates). Rates must satisfy 0 <= rates <= instance rates; entries
// within 1e-9 of a bound are clamped. Throws InvalidRates.
double R4WithRates(const Instance& instance, const NodeSequence& sequence,
                   std::span<const double> rates);

struct SetAllocation {
  NodeSet nodes;
  AssignmentMatrix assignment;
  double value = 0.0;  // R3(U)
};

// Optimal fractional allocation over a node set.
SetAllocation FullFractionalAllocation(const Instance& instance,
                                       const NodeSet& nodes);
SetAllocation FullFractionalAllocation(const Instance& instance,
                                       const NodeSet& nodes,
                                       std::span<const double> rates);

}  // namespace nfvplace

#endif  // NFVPLACE_FRACTIONAL_ALLOC_H_
