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

#include "nfvplace/placement.h"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>

#include "nfvplace/errors.h"
#include "nfvplace/fractional_alloc.h"

namespace nfvplace {
namespace {

// Generic greedy loop. `state` holds the incumbent; `extend` returns the
// state after adding a node; `value` reads the objective of a state.
template <typename State>
PlacementResult Greedy(const Instance& instance, std::size_t k,
                       PlacementAlgorithm algorithm, State state,
                       const std::function<State(const State&, NodeIndex)>& extend,
                       const std::function<double(const State&)>& value) {
  if (k == 0) throw InvalidRange("budget k must be at least 1");
  PlacementResult result;
  result.algorithm = algorithm;
  const std::vector<NodeIndex> order = NodesById(instance);
  std::vector<char> selected(instance.num_nodes(), 0);
  const std::size_t rounds = std::min(k, instance.num_nodes());
  const auto start = std::chrono::steady_clock::now();
  double current = value(state);
  for (std::size_t round = 0; round < rounds; ++round) {
    std::optional<NodeIndex> best;
    std::optional<State> best_state;
    double best_gain = 0.0;
    std::optional<NodeIndex> fallback;
    for (NodeIndex v : order) {
      if (selected[v]) continue;
      if (!fallback) fallback = v;
      State next = extend(state, v);
      const double gain = value(next) - current;
      if (gain > kTieEps && (!best || gain > best_gain + kTieEps)) {
        best = v;
        best_gain = gain;
        best_state = std::move(next);
      }
    }
    if (!best) {
      best = fallback;
      best_state = extend(state, *fallback);
      best_gain = value(*best_state) - current;
    }
    selected[*best] = 1;
    state = std::move(*best_state);
    current = value(state);
    result.sequence.push_back(*best);
    result.per_iteration_marginals.push_back(best_gain);
    result.prefix_values.push_back(current);
    result.prefix_runtime_ms.push_back(
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
            .count());
  }
  result.set = MakeNodeSet(result.sequence);
  result.value = current;
  return result;
}

}  // namespace

const char* ToString(PlacementAlgorithm algorithm) {
  return algorithm == PlacementAlgorithm::kSsg ? "ssg" : "sg";
}

PlacementResult PlacementResult::Truncated(std::size_t k) const {
  PlacementResult out = *this;
  const std::size_t m = std::min(k, sequence.size());
  out.sequence.resize(m);
  out.per_iteration_marginals.resize(m);
  out.prefix_values.resize(m);
  out.prefix_runtime_ms.resize(m);
  out.set = MakeNodeSet(out.sequence);
  out.value = m == 0 ? 0.0 : prefix_values[m - 1];
  return out;
}

std::vector<NodeIndex> NodesById(const Instance& instance) {
  std::vector<NodeIndex> order(instance.num_nodes());
  for (NodeIndex v = 0; v < order.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
    return instance.nodes[a].id < instance.nodes[b].id;
  });
  return order;
}

PlacementResult Ssg(const Instance& instance, std::size_t k) {
  const std::vector<double> rates = InstanceRates(instance);
  return Greedy<SequenceAllocation>(
      instance, k, PlacementAlgorithm::kSsg, SequenceAllocation{},
      [&](const SequenceAllocation& s, NodeIndex v) {
        return ExtendAllocation(instance, s, v, rates);
      },
      [](const SequenceAllocation& s) { return s.value; });
}

PlacementResult Sg(const Instance& instance, std::size_t k) {
  return Greedy<SetAllocation>(
      instance, k, PlacementAlgorithm::kSg, SetAllocation{},
      [&](const SetAllocation& s, NodeIndex v) {
        NodeSet nodes = s.nodes;
        nodes.push_back(v);
        return FullFractionalAllocation(instance, MakeNodeSet(nodes));
      },
      [](const SetAllocation& s) { return s.value; });
}

PlacementResult Place(const Instance& instance, std::size_t k,
                      PlacementAlgorithm algorithm) {
  return algorithm == PlacementAlgorithm::kSsg ? Ssg(instance, k)
                                               : Sg(instance, k);
}

}  // namespace nfvplace
