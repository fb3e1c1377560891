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

// Exact solvers by exhaustive search, for small instances only.

#ifndef NFVPLACE_BASELINE_ORACLE_H_
#define NFVPLACE_BASELINE_ORACLE_H_

#include <cstddef>
#include <vector>

#include "nfvplace/fractional_alloc.h"
#include "nfvplace/model.h"

namespace nfvplace {

inline constexpr std::size_t kExactMaxNodes = 12;
inline constexpr std::size_t kExactMaxFlows = 14;
inline constexpr std::size_t kExactMaxSequences = 100000;

struct ExactResult {
  NodeSet best_nodes;
  std::vector<FlowIndex> served_flows;  // fully processed, index order
  double value = 0.0;                   // total rate of served_flows
  // Feasible assignment serving every served flow in full.
  AssignmentMatrix certificate;
  // Node sets plus flow subsets examined.
  std::size_t explored = 0;
};

// Best set of fully processed flows on a fixed node set. Flows may be
// split across the nodes of their path. Throws TooLarge when more than
// kExactMaxFlows flows touch `nodes`.
ExactResult OptimalAllocationExact(const Instance& instance,
                                   const NodeSet& nodes);

// Best placement of at most k nodes together with its best allocation.
// Throws TooLarge beyond kExactMaxNodes nodes or kExactMaxFlows flows.
ExactResult OptimalExact(const Instance& instance, std::size_t k);

struct SequenceOptimum {
  NodeSequence sequence;
  double value = 0.0;
  std::size_t explored = 0;
};

// Largest sequence value R4 over all duplicate-free sequences of length at
// most k. Among equal values the longer sequence is kept. Throws TooLarge
// when there are more than kExactMaxSequences such sequences.
SequenceOptimum OptimalSequenceR4(const Instance& instance, std::size_t k);

}  // namespace nfvplace

#endif  // NFVPLACE_BASELINE_ORACLE_H_
