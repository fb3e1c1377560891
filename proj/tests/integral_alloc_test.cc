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

#include "nfvplace/integral_alloc.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "nfvplace/baseline_oracle.h"
#include "nfvplace/errors.h"
#include "nfvplace/placement.h"
#include "support/instances.h"
#include "support/properties.h"

namespace nfvplace {
namespace {

constexpr double kTol = 1e-6;

Instance SingleResource(const std::vector<double>& caps) {
  Instance in;
  in.resources = {"r"};
  for (std::size_t v = 0; v < caps.size(); ++v) {
    in.nodes.push_back({"n" + std::to_string(v), {caps[v]}});
  }
  for (NodeIndex v = 0; v + 1 < caps.size(); ++v) in.edges.push_back({v, v + 1, 1});
  return in;
}

void AddFlow(Instance& in, const std::string& id, double rate, double delta,
             std::vector<NodeIndex> path) {
  in.functions.push_back({"phi_" + id, {delta}});
  Flow f;
  f.id = id;
  f.src = path.front();
  f.dst = path.back();
  f.rate = rate;
  f.functions = {in.functions.size() - 1};
  f.path = std::move(path);
  in.flows.push_back(f);
}

// Straightforward re-statement of both allocators over maps, used as an
// oracle. `per_node` selects the node-by-node variant.
double ReferenceAllocator(const Instance& in, const NodeSequence& order,
                          bool per_node) {
  const std::size_t num_r = in.num_resources();
  double d_max = 0;
  for (FlowIndex f = 0; f < in.num_flows(); ++f) {
    for (ResourceIndex r = 0; r < num_r; ++r) {
      d_max = std::max(d_max, FlowTotalDemand(in, f, r) * in.flows[f].rate);
    }
  }
  auto d = [&](FlowIndex f, ResourceIndex r) {
    return FlowTotalDemand(in, f, r) * in.flows[f].rate / d_max;
  };
  auto cbar = [&](NodeIndex v, ResourceIndex r) {
    return in.nodes[v].capacity[r] / d_max;
  };
  double z = 1e300;
  for (NodeIndex v : order) {
    for (ResourceIndex r = 0; r < num_r; ++r) z = std::min(z, cbar(v, r));
  }
  std::map<std::pair<NodeIndex, ResourceIndex>, double> price, used;
  auto on_path = [&](FlowIndex f, NodeIndex v) {
    const auto& p = in.flows[f].path;
    return std::find(p.begin(), p.end(), v) != p.end();
  };
  auto fits = [&](FlowIndex f, NodeIndex v) {
    for (ResourceIndex r = 0; r < num_r; ++r) {
      const double c = in.nodes[v].capacity[r];
      if (used[{v, r}] + FlowTotalDemand(in, f, r) * in.flows[f].rate >
          c + 1e-9 * std::max(1.0, c)) {
        return false;
      }
    }
    return true;
  };
  std::set<FlowIndex> done;
  double total = 0;
  auto assign = [&](FlowIndex f, NodeIndex v, double base) {
    done.insert(f);
    total += in.flows[f].rate;
    for (ResourceIndex r = 0; r < num_r; ++r) {
      used[{v, r}] += FlowTotalDemand(in, f, r) * in.flows[f].rate;
      price[{v, r}] *= std::pow(base, d(f, r) / (cbar(v, r) - 1));
    }
  };
  const double e = std::exp(z - 1);
  if (!per_node) {
    const double base = e * num_r * order.size();
    for (NodeIndex v : order) {
      for (ResourceIndex r = 0; r < num_r; ++r) price[{v, r}] = 1 / cbar(v, r);
    }
    std::set<std::pair<FlowIndex, NodeIndex>> banned;
    while (true) {
      double weighted = 0;
      for (NodeIndex v : order) {
        for (ResourceIndex r = 0; r < num_r; ++r) weighted += cbar(v, r) * price[{v, r}];
      }
      if (weighted >= base) break;
      double best_ratio = -1;
      FlowIndex best_f = 0;
      NodeIndex best_v = 0;
      for (FlowIndex f = 0; f < in.num_flows(); ++f) {
        if (done.count(f)) continue;
        double cheapest = 1e300;
        NodeIndex at = 0;
        for (NodeIndex v : MakeNodeSet(order)) {
          if (!on_path(f, v) || banned.count({f, v})) continue;
          double p = 0;
          for (ResourceIndex r = 0; r < num_r; ++r) p += price[{v, r}];
          if (p < cheapest) cheapest = p, at = v;
        }
        if (cheapest == 1e300) continue;
        double priced = 0;
        for (ResourceIndex r = 0; r < num_r; ++r) priced += d(f, r) * price[{at, r}];
        const double ratio = in.flows[f].rate / priced;
        if (ratio > best_ratio) best_ratio = ratio, best_f = f, best_v = at;
      }
      if (best_ratio < 0) break;
      if (fits(best_f, best_v)) {
        assign(best_f, best_v, base);
      } else {
        banned.insert({best_f, best_v});
      }
    }
    return total;
  }
  const double base = e * num_r;
  for (NodeIndex v : order) {
    for (ResourceIndex r = 0; r < num_r; ++r) price[{v, r}] = 1 / cbar(v, r);
    std::set<FlowIndex> skipped;
    while (true) {
      double weighted = 0;
      for (ResourceIndex r = 0; r < num_r; ++r) weighted += cbar(v, r) * price[{v, r}];
      if (weighted >= base) break;
      double best_ratio = -1;
      FlowIndex best_f = 0;
      for (FlowIndex f = 0; f < in.num_flows(); ++f) {
        if (done.count(f) || skipped.count(f) || !on_path(f, v)) continue;
        double priced = 0;
        for (ResourceIndex r = 0; r < num_r; ++r) priced += d(f, r) * price[{v, r}];
        const double ratio = in.flows[f].rate / priced;
        if (ratio > best_ratio) best_ratio = ratio, best_f = f;
      }
      if (best_ratio < 0) break;
      if (fits(best_f, v)) {
        assign(best_f, v, base);
      } else {
        skipped.insert(best_f);
      }
    }
  }
  return total;
}

TEST(NormalizeTest, DirectArithmetic) {
  Instance in = SingleResource({8, 8});
  in.resources = {"r1", "r2"};
  for (Node& n : in.nodes) n.capacity = {8, 8};
  in.functions = {{"a", {1, 2}}, {"b", {3, 1}}};
  in.flows = {{"f1", 0, 1, 2.0, {0}, {0, 1}}, {"f2", 0, 1, 1.0, {1}, {0, 1}}};
  const NormalizedInstance norm = Normalize(in, {0, 1});
  EXPECT_EQ(norm.d_max, 4.0);
  EXPECT_EQ(norm.demand(0, 0), 0.5);
  EXPECT_EQ(norm.demand(0, 1), 1.0);
  EXPECT_EQ(norm.demand(1, 0), 0.75);
  EXPECT_EQ(norm.demand(1, 1), 0.25);
  EXPECT_EQ(norm.capacity(1, 1), 2.0);
  EXPECT_EQ(norm.z, 2.0);
}

TEST(NormalizeTest, SingleFlowStretchIsExact) {
  Instance in = SingleResource({1, 1});
  AddFlow(in, "f", 1.7, 3.1, {0, 1});
  const double d_max = 1.7 * 3.1;
  for (Node& n : in.nodes) n.capacity = {2.5 * d_max};
  EXPECT_EQ(Normalize(in, {0}).z, 2.5);
}

TEST(NormalizeTest, RoundedExampleIsBarelyStretched) {
  const Instance in = testing::ThreeNodeExampleRounded();
  const NormalizedInstance norm = Normalize(in, {1, 2});
  EXPECT_NEAR(norm.d_max, 9.999909, 1e-12);
  EXPECT_NEAR(norm.z, 10.0 / 9.999909, 1e-12);
  // Just above the guard, so both allocators still run.
  EXPECT_GT(norm.z, 1 + kZEps);
  EXPECT_FALSE(
      FindAssignmentViolation(in, Pra(in, norm).assignment, 1e-7).has_value());
  EXPECT_FALSE(FindAssignmentViolation(in, Nra(in, norm, {1, 2}).assignment, 1e-7)
                   .has_value());
}

TEST(NormalizeTest, Errors) {
  Instance in = SingleResource({1});
  AddFlow(in, "f", 1.0, 0.0, {0});
  EXPECT_THROW(Normalize(in, {0}), DegenerateInstance);
  EXPECT_THROW(Normalize(in, {}), InvalidRange);
}

TEST(PraTest, ExactExampleHasNoStretch) {
  const Instance in = testing::ThreeNodeExample();
  const NormalizedInstance norm = Normalize(in, {1, 2});
  EXPECT_EQ(norm.z, 1.0);
  EXPECT_THROW(Pra(in, norm), ZTooSmall);
}

TEST(PraTest, RatioOrderDecidesFirstPick) {
  // d_max = 2 comes from flow C on the unplaced node; A and B both have
  // normalized demand 0.5 and the placed node has c_bar = 3.
  Instance in = SingleResource({6, 6});
  AddFlow(in, "A", 3.0, 1.0 / 3.0, {0});
  AddFlow(in, "B", 1.0, 1.0, {0});
  AddFlow(in, "C", 1.0, 2.0, {1});
  const NormalizedInstance norm = Normalize(in, {0});
  ASSERT_EQ(norm.z, 3.0);
  const IntegralAssignment a = Pra(in, norm);
  ASSERT_EQ(a.assigned.size(), 2u);
  EXPECT_EQ(a.assigned[0], 0u);
  EXPECT_EQ(a.assigned[1], 1u);
  EXPECT_FALSE(a.stopped_by_threshold);
  EXPECT_NEAR(ProcessedTraffic(in, a), 4.0, kTol);
  EXPECT_NEAR(OptimalAllocationExact(in, {0}).value, 4.0, kTol);
  EXPECT_FALSE(a.node_of_flow[2].has_value());
}

TEST(PraTest, RoomyNodeTakesEverything) {
  Instance in = SingleResource({1000});
  AddFlow(in, "a", 1.0, 2.0, {0});
  AddFlow(in, "b", 2.0, 1.0, {0});
  const IntegralAssignment a = Pra(in, Normalize(in, {0}));
  EXPECT_EQ(a.assigned.size(), 2u);
  EXPECT_FALSE(a.stopped_by_threshold);
  EXPECT_EQ(ProcessedTraffic(in, a), 3.0);
}

TEST(PraTest, ZeroDemandFlowGoesToFirstPlacedNode) {
  Instance in = SingleResource({10, 10, 10});
  AddFlow(in, "free", 1.0, 0.0, {0, 1, 2});
  AddFlow(in, "paid", 1.0, 2.0, {2});
  const IntegralAssignment a = Pra(in, Normalize(in, {1, 2}));
  EXPECT_EQ(a.node_of_flow[0], NodeIndex{1});
  const IntegralAssignment b = Nra(in, Normalize(in, {1, 2}), {2, 1});
  EXPECT_EQ(b.node_of_flow[0], NodeIndex{1});
}

TEST(NraTest, SingleNodeMatchesPra) {
  SplitMix64 rng(41);
  for (int t = 0; t < 30; ++t) {
    const Instance in = testing::WithStretch(testing::RandomSmallInstance(rng),
                                             1.5 + 3 * rng.Uniform());
    const NodeIndex v = rng.Below(in.num_nodes());
    const NormalizedInstance norm = Normalize(in, {v});
    EXPECT_EQ(Pra(in, norm).assignment.entries(),
              Nra(in, norm, {v}).assignment.entries());
  }
}

TEST(NraTest, DisjointCoverageIgnoresOrder) {
  Instance in = SingleResource({5, 5});
  AddFlow(in, "a", 1.0, 2.0, {0});
  AddFlow(in, "b", 1.5, 1.0, {0});
  AddFlow(in, "c", 0.5, 3.0, {1});
  AddFlow(in, "d", 2.0, 1.0, {1});
  const NormalizedInstance norm = Normalize(in, {0, 1});
  EXPECT_EQ(ProcessedTraffic(in, Nra(in, norm, {0, 1})),
            ProcessedTraffic(in, Nra(in, norm, {1, 0})));
}

TEST(NraTest, RejectsOrderOutsidePlacedSet) {
  Instance in = SingleResource({5, 5, 5});
  AddFlow(in, "a", 1.0, 2.0, {0, 1});
  const NormalizedInstance norm = Normalize(in, {0, 1});
  EXPECT_THROW(Nra(in, norm, {0}), InvalidRange);
  EXPECT_THROW(Nra(in, norm, {0, 2}), InvalidRange);
  EXPECT_THROW(Nra(in, norm, {0, 1, 1}), InvalidRange);
}

TEST(AllocatorTest, MatchesReferenceSimulation) {
  SplitMix64 rng(42);
  for (int t = 0; t < 150; ++t) {
    const double z = 1.05 + 4 * rng.Uniform();
    const Instance in = testing::WithStretch(testing::RandomSmallInstance(rng), z);
    const NodeSequence order = testing::RandomSequence(rng, in.num_nodes(), 4);
    const NormalizedInstance norm = Normalize(in, MakeNodeSet(order));
    EXPECT_NEAR(ProcessedTraffic(in, Pra(in, norm)),
                ReferenceAllocator(in, order, false), 1e-9)
        << "trial " << t;
    EXPECT_NEAR(ProcessedTraffic(in, Nra(in, norm, order)),
                ReferenceAllocator(in, order, true), 1e-9)
        << "trial " << t;
  }
}

TEST(AllocatorTest, OutputsAreFeasibleWholeFlows) {
  SplitMix64 rng(43);
  for (int t = 0; t < 150; ++t) {
    const double z = 1.01 + 3 * rng.Uniform();
    const Instance in = testing::WithStretch(testing::RandomSmallInstance(rng), z);
    const NodeSequence order = testing::RandomSequence(rng, in.num_nodes(), 5);
    const NormalizedInstance norm = Normalize(in, MakeNodeSet(order));
    for (bool per_node : {false, true}) {
      const IntegralAssignment a =
          per_node ? Nra(in, norm, order) : Pra(in, norm);
      EXPECT_FALSE(FindAssignmentViolation(in, a.assignment, 1e-7).has_value());
      for (const auto& [key, x] : a.assignment.entries()) {
        EXPECT_EQ(x, in.flows[key.first].rate);
        EXPECT_EQ(a.node_of_flow[key.first], key.second);
        EXPECT_TRUE(std::binary_search(norm.nodes.begin(), norm.nodes.end(),
                                       key.second));
      }
      for (double r : a.residual) EXPECT_GE(r, -1e-7);
      for (NodeIndex v : norm.nodes) {
        for (ResourceIndex r = 0; r < in.num_resources(); ++r) {
          EXPECT_GE(a.prices[v * in.num_resources() + r],
                    1.0 / norm.capacity(v, r));
        }
      }
      if (!per_node && a.stopped_by_threshold) {
        double weighted = 0;
        for (NodeIndex v : norm.nodes) {
          for (ResourceIndex r = 0; r < in.num_resources(); ++r) {
            weighted += norm.capacity(v, r) * a.prices[v * in.num_resources() + r];
          }
        }
        EXPECT_GE(weighted, std::exp(norm.z - 1) * in.num_resources() *
                                norm.nodes.size());
      }
      const double got = ProcessedTraffic(in, a);
      const double r4 = IterativeAllocation(in, order).value;
      const double r3 = FullFractionalAllocation(in, norm.nodes).value;
      EXPECT_LE(got, r4 + kTol);
      EXPECT_LE(r4, r3 + kTol);
      EXPECT_LE(got, OptimalAllocationExact(in, norm.nodes).value + kTol);
    }
  }
}

TEST(AllocatorTest, NormalizedOptimumEqualsSetValue) {
  SplitMix64 rng(44);
  for (int t = 0; t < 50; ++t) {
    const Instance in = testing::RandomSmallInstance(rng);
    const NodeSet nodes =
        MakeNodeSet(testing::RandomSequence(rng, in.num_nodes(), 4));
    EXPECT_NEAR(NormalizedFractionalOptimum(in, Normalize(in, nodes)),
                FullFractionalAllocation(in, nodes).value, kTol);
  }
}

TEST(ProcessedTrafficTest, Examples) {
  const Instance in = testing::ThreeNodeExampleRounded();
  AssignmentMatrix x;
  EXPECT_EQ(ProcessedTraffic(in, x), 0.0);
  x.Set(1, 1, 1.0);
  x.Set(2, 2, 1.01);
  EXPECT_FALSE(FindAssignmentViolation(in, x, 0.0).has_value());
  EXPECT_NEAR(ProcessedTraffic(in, x), 2.01, 1e-12);
  x.Set(0, 0, 0.02);
  EXPECT_NEAR(ProcessedTraffic(in, x), in.total_rate(), 1e-12);
  // A partly served flow does not count.
  x.Set(2, 2, 0.5);
  EXPECT_NEAR(ProcessedTraffic(in, x), 1.02, 1e-12);
}

TEST(AllocatorPropertiesTest, RatiosAgainstSequenceValue) {
  const auto rep = testing::CheckAllocatorRatios(45, 20, {2, 4, 8});
  EXPECT_TRUE(rep.ok()) << rep.first_failure;
}

}  // namespace
}  // namespace nfvplace
