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

// Whole-flow resource allocation on placed VNF-nodes.
//
// Both allocators are primal-dual: each resource of each node carries a
// price b that starts at 1 / c_bar and grows geometrically as the resource
// fills. Pra keeps prices for all placed nodes at once and assigns the flow
// with the best rate-to-priced-demand ratio at its cheapest node. Nra visits
// the nodes one at a time with fresh prices.
//
// A flow is only ever committed where it fits in the remaining capacity;
// when the cheapest node cannot take it, that (flow, node) pair is dropped
// from consideration and the selection is repeated.

#ifndef NFVPLACE_INTEGRAL_ALLOC_H_
#define NFVPLACE_INTEGRAL_ALLOC_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "nfvplace/fractional_alloc.h"
#include "nfvplace/model.h"

namespace nfvplace {

// Pra and Nra need Z > 1 + kZEps.
inline constexpr double kZEps = 1e-6;

struct NormalizedInstance {
  NodeSet nodes;        // the placed set the stretch refers to
  double d_max = 0.0;   // max over flows and resources of delta * rate
  std::size_t num_resources = 0;
  std::vector<double> d;      // flow-major: delta * rate / d_max
  std::vector<double> c_bar;  // node-major over all nodes: capacity / d_max
  double z = 0.0;             // min of c_bar over placed nodes

  double demand(FlowIndex f, ResourceIndex r) const {
    return d[f * num_resources + r];
  }
  double capacity(NodeIndex v, ResourceIndex r) const {
    return c_bar[v * num_resources + r];
  }
};

// Throws InvalidRange for an empty node set and DegenerateInstance when no
// flow has positive demand.
NormalizedInstance Normalize(const Instance& instance, const NodeSet& nodes);

struct IntegralAssignment {
  AssignmentMatrix assignment;
  std::vector<FlowIndex> assigned;                   // in assignment order
  std::vector<std::optional<NodeIndex>> node_of_flow;  // per flow
  // Remaining capacity per node (node-major, all nodes), original units.
  std::vector<double> residual;
  // Final prices per node (node-major, all nodes; 0 off the placed set).
  std::vector<double> prices;
  // True when a price threshold ended the run (at some node, for Nra).
  bool stopped_by_threshold = false;
  // Number of (flow, node) pairs discarded because the flow did not fit.
  std::size_t capacity_rejections = 0;
};

// Throws ZTooSmall when norm.z <= 1 + kZEps.
IntegralAssignment Pra(const Instance& instance, const NormalizedInstance& norm);

// `order` must be a permutation of norm.nodes (InvalidRange otherwise).
IntegralAssignment Nra(const Instance& instance, const NormalizedInstance& norm,
                       const NodeSequence& order);

// Traffic of flows that are fully processed (assigned at least
// rate - 1e-7 in total).
double ProcessedTraffic(const Instance& instance, const AssignmentMatrix& x);
double ProcessedTraffic(const Instance& instance, const IntegralAssignment& a);

// Diagnostic: optimum of the normalized fractional LP over the placed set,
// max sum_f rate_f sum_v a_f^v subject to sum_f d_f^r a_f^v <= c_bar_v^r and
// sum_v a_f^v <= 1. It coincides with the set value R3 of the placed set.
double NormalizedFractionalOptimum(const Instance& instance,
                                   const NormalizedInstance& norm);

}  // namespace nfvplace

#endif  // NFVPLACE_INTEGRAL_ALLOC_H_
