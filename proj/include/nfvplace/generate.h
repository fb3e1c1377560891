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

#ifndef NFVPLACE_GENERATE_H_
#define NFVPLACE_GENERATE_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include "nfvplace/model.h"

namespace nfvplace {

struct DemandRange {
  double lo = 0.0;
  double hi = 20.0;
};

// Replaces functions and capacities of `instance`:
//  * resources become "r1".."rR";
//  * each flow gets its own function "phi_<flow id>" whose unit demand on
//    every resource is drawn uniformly from [lo, hi] (flow order, then
//    resource order, one SplitMix64 stream seeded with `seed`);
//  * every node capacity becomes z_stretch * d_max, where
//    d_max = max over flows and resources of (unit demand * rate).
// Paths and rates are kept. Throws InvalidRange.
Instance GenerateDemands(const Instance& instance, DemandRange range,
                         std::size_t num_resources, double z_stretch,
                         std::uint64_t seed);

// Sets every node capacity to z_stretch * d_max, keeping demands. Throws
// InvalidRange when z_stretch <= 1.
Instance ScaleCapacities(const Instance& instance, double z_stretch);

enum class Topology { kLine, kRing, kRandom, kAbilene };

Topology ParseTopology(const std::string& name);

// Topology-only instance (no resources, no functions, paths unset).
//  * line / ring / random: `num_nodes` nodes "n0".."n{N-1}"; random adds
//    extra chords to a spanning ring. `num_flows` flows between random
//    distinct endpoints.
//  * abilene: the 12-node, 15-link Abilene backbone with one flow per
//    ordered node pair including self pairs (144 flows); `num_nodes` and
//    `num_flows` are ignored.
// Flow rates follow a gravity model, rate(u, w) = 0.1 + 9.9 * m_u * m_w
// with node masses m drawn uniformly from [0, 1]. Unit edge costs.
Instance SyntheticTopology(Topology topology, std::size_t num_nodes,
                           std::size_t num_flows, std::uint64_t seed);

}  // namespace nfvplace

#endif  // NFVPLACE_GENERATE_H_
