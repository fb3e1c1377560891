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

// Greedy VNF-node placement under a node budget k.
//
// Ssg grows a node sequence, each round appending the node with the largest
// marginal gain in the sequence value R4. Sg does the same on node sets with
// the set value R3; it is a heuristic without a proven ratio.

#ifndef NFVPLACE_PLACEMENT_H_
#define NFVPLACE_PLACEMENT_H_

#include <cstddef>
#include <string>
#include <vector>

#include "nfvplace/model.h"

namespace nfvplace {

// Marginals at or below this count as zero.
inline constexpr double kTieEps = 1e-9;

enum class PlacementAlgorithm { kSsg, kSg };

const char* ToString(PlacementAlgorithm algorithm);

struct PlacementResult {
  PlacementAlgorithm algorithm = PlacementAlgorithm::kSsg;
  NodeSequence sequence;  // selection order
  NodeSet set;            // the selected nodes
  // R4(sequence) for Ssg, R3(set) for Sg.
  double value = 0.0;
  // Gain of the node chosen in each round.
  std::vector<double> per_iteration_marginals;
  // Objective after each round; prefix_values[i] is the value of the first
  // i + 1 nodes.
  std::vector<double> prefix_values;
  // Wall-clock milliseconds spent up to the end of each round.
  std::vector<double> prefix_runtime_ms;

  // The greedy run for a smaller budget is a prefix of this one.
  PlacementResult Truncated(std::size_t k) const;
};

// Each round picks the unselected node with the largest marginal; ties
// within kTieEps go to the smallest node id, and when no marginal exceeds
// kTieEps the smallest-id unselected node is taken. Stops after
// min(k, |V|) rounds. Throws InvalidRange when k == 0.
PlacementResult Ssg(const Instance& instance, std::size_t k);
PlacementResult Sg(const Instance& instance, std::size_t k);
PlacementResult Place(const Instance& instance, std::size_t k,
                      PlacementAlgorithm algorithm);

// Node indices ordered by id.
std::vector<NodeIndex> NodesById(const Instance& instance);

}  // namespace nfvplace

#endif  // NFVPLACE_PLACEMENT_H_
