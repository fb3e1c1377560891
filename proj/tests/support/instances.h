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

// Shared test instances.

#ifndef NFVPLACE_TESTS_SUPPORT_INSTANCES_H_
#define NFVPLACE_TESTS_SUPPORT_INSTANCES_H_

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "nfvplace/model.h"
#include "nfvplace/random.h"

namespace nfvplace::testing {

// Three nodes v1, v2, v3 with 10 units of r1 and r2 each; flows
//   f1: rate 0.02, path (v1, v2), demand (4, 10)
//   f2: rate 1,    path (v2),     demand (9.92, 9.8)
//   f3: rate 1.01, path (v2, v3), demand (f3_demand, f3_demand)
// With f3_demand = 10 / 1.01 flow f3 exactly fills a node, which makes the
// sequence values come out as round numbers.
inline Instance ThreeNodeExample(double f3_demand = 10.0 / 1.01) {
  Instance in;
  in.resources = {"r1", "r2"};
  for (const char* id : {"v1", "v2", "v3"}) in.nodes.push_back({id, {10, 10}});
  in.edges = {{0, 1, 1.0}, {1, 2, 1.0}};
  in.functions = {{"phi1", {4, 10}},
                  {"phi2", {9.92, 9.8}},
                  {"phi3", {f3_demand, f3_demand}}};
  in.flows = {{"f1", 0, 1, 0.02, {0}, {0, 1}},
              {"f2", 1, 1, 1.0, {1}, {1}},
              {"f3", 1, 2, 1.01, {2}, {1, 2}}};
  return in;
}

// The same example with the demand of f3 rounded to 9.9009.
inline Instance ThreeNodeExampleRounded() { return ThreeNodeExample(9.9009); }

struct RandomInstanceOptions {
  std::size_t max_nodes = 6;
  std::size_t max_flows = 10;
  std::size_t max_resources = 2;
  // Capacities drawn from [cap_lo, cap_hi]; unit demands from (0, 1].
  double cap_lo = 0.5;
  double cap_hi = 3.0;
  double rate_lo = 0.1;
  double rate_hi = 2.0;
};

// Small random instance on a complete graph: every flow gets a random simple
// path (random length, random distinct nodes). Paths are explicit, so no
// shortest-path computation is involved.
inline Instance RandomSmallInstance(SplitMix64& rng,
                                    const RandomInstanceOptions& opt = {}) {
  Instance in;
  const std::size_t num_nodes = 2 + rng.Below(opt.max_nodes - 1);
  const std::size_t num_flows = 1 + rng.Below(opt.max_flows);
  const std::size_t num_res = 1 + rng.Below(opt.max_resources);
  for (std::size_t r = 0; r < num_res; ++r) {
    in.resources.push_back("r" + std::to_string(r));
  }
  for (std::size_t v = 0; v < num_nodes; ++v) {
    Node node{"v" + std::to_string(v), {}};
    for (std::size_t r = 0; r < num_res; ++r) {
      node.capacity.push_back(rng.Uniform(opt.cap_lo, opt.cap_hi));
    }
    in.nodes.push_back(node);
  }
  for (NodeIndex u = 0; u < num_nodes; ++u) {
    for (NodeIndex v = u + 1; v < num_nodes; ++v) in.edges.push_back({u, v, 1});
  }
  for (std::size_t f = 0; f < num_flows; ++f) {
    NetworkFunction fn{"phi" + std::to_string(f), {}};
    for (std::size_t r = 0; r < num_res; ++r) {
      fn.unit_demand.push_back(0.05 + 0.95 * rng.Uniform());
    }
    in.functions.push_back(fn);
    std::vector<NodeIndex> pool(num_nodes);
    for (std::size_t i = 0; i < num_nodes; ++i) pool[i] = i;
    for (std::size_t i = num_nodes; i > 1; --i) {
      std::swap(pool[i - 1], pool[rng.Below(i)]);
    }
    pool.resize(1 + rng.Below(num_nodes));
    Flow flow;
    flow.id = "f" + std::to_string(f);
    flow.src = pool.front();
    flow.dst = pool.back();
    flow.rate = rng.Uniform(opt.rate_lo, opt.rate_hi);
    flow.functions = {f};
    flow.path = pool;
    in.flows.push_back(flow);
  }
  return in;
}

// Random sequence of distinct nodes of length in [1, max_len].
inline NodeSequence RandomSequence(SplitMix64& rng, std::size_t num_nodes,
                                   std::size_t max_len) {
  std::vector<NodeIndex> pool(num_nodes);
  for (std::size_t i = 0; i < num_nodes; ++i) pool[i] = i;
  for (std::size_t i = num_nodes; i > 1; --i) {
    std::swap(pool[i - 1], pool[rng.Below(i)]);
  }
  const std::size_t cap = std::min(max_len, num_nodes);
  pool.resize(1 + rng.Below(cap));
  return pool;
}

}  // namespace nfvplace::testing

#endif  // NFVPLACE_TESTS_SUPPORT_INSTANCES_H_
