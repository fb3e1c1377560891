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

#include "nfvplace/baseline_oracle.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>

#include "nfvplace/errors.h"
#include "nfvplace/lp_solver.h"

namespace nfvplace {
namespace {

// A served subset can never beat the fractional optimum on the same nodes;
// the slack absorbs LP round-off in that bound.
constexpr double kBoundSlack = 1e-7;

bool OnPath(const Flow& flow, NodeIndex v) {
  return std::find(flow.path.begin(), flow.path.end(), v) != flow.path.end();
}

// Assignment serving every flow of `served` in full on `nodes`, if any.
std::optional<AssignmentMatrix> ServeAll(const Instance& instance,
                                         const NodeSet& nodes,
                                         const std::vector<FlowIndex>& served) {
  std::vector<AssignmentMatrix::Key> cols;
  for (FlowIndex f : served) {
    for (NodeIndex v : nodes) {
      if (OnPath(instance.flows[f], v)) cols.emplace_back(f, v);
    }
  }
  LinearProgram lp(cols.size());
  for (FlowIndex f : served) {
    std::vector<double> row(cols.size(), 0.0);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].first == f) row[c] = 1.0;
    }
    lp.AddEq(std::move(row), instance.flows[f].rate);
  }
  for (NodeIndex v : nodes) {
    for (ResourceIndex r = 0; r < instance.num_resources(); ++r) {
      std::vector<double> row(cols.size(), 0.0);
      bool any = false;
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].second != v) continue;
        row[c] = FlowTotalDemand(instance, cols[c].first, r);
        any = true;
      }
      if (any) lp.AddLeq(std::move(row), instance.nodes[v].capacity[r]);
    }
  }
  const LpSolution sol = Solve(lp);
  if (sol.status != LpStatus::kOptimal) return std::nullopt;
  AssignmentMatrix x;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    x.Set(cols[c].first, cols[c].second, sol.values[c]);
  }
  return x;
}

// Best served subset on `nodes` whose value beats `floor`, if any.
std::optional<ExactResult> BestServedSubset(const Instance& instance,
                                            const NodeSet& nodes, double floor,
                                            std::size_t& explored) {
  // Flows that fit alone on at least one placed node of their path.
  std::vector<FlowIndex> candidates;
  for (FlowIndex f : CoveredFlows(instance, nodes)) {
    const Flow& flow = instance.flows[f];
    for (NodeIndex v : nodes) {
      if (!OnPath(flow, v)) continue;
      bool fits = true;
      for (ResourceIndex r = 0; r < instance.num_resources(); ++r) {
        if (FlowTotalDemand(instance, f, r) * flow.rate >
            instance.nodes[v].capacity[r] * (1 + 1e-9)) {
          fits = false;
        }
      }
      // A flow may also be split across nodes, so keep it when its path has
      // several placed nodes.
      std::size_t placed_on_path = 0;
      for (NodeIndex u : nodes) placed_on_path += OnPath(flow, u);
      if (fits || placed_on_path > 1) {
        candidates.push_back(f);
        break;
      }
    }
  }
  if (candidates.size() > kExactMaxFlows) {
    throw TooLarge(std::to_string(candidates.size()) +
                   " candidate flows exceed the exact-search limit");
  }
  const double bound = FullFractionalAllocation(instance, nodes).value;
  const std::size_t n = candidates.size();
  std::vector<std::uint32_t> masks(std::size_t{1} << n);
  std::iota(masks.begin(), masks.end(), 0u);
  std::vector<double> total(masks.size(), 0.0);
  for (std::uint32_t m = 1; m < masks.size(); ++m) {
    const int low = __builtin_ctz(m);
    total[m] = total[m & (m - 1)] + instance.flows[candidates[low]].rate;
  }
  std::stable_sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
    return total[a] > total[b];
  });
  for (std::uint32_t m : masks) {
    if (total[m] <= floor || m == 0) break;
    if (total[m] > bound + kBoundSlack * std::max(1.0, bound)) continue;
    // Aggregate capacity of the placed set, per resource.
    bool possible = true;
    for (ResourceIndex r = 0; r < instance.num_resources() && possible; ++r) {
      double need = 0.0, have = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (m >> i & 1) {
          need += FlowTotalDemand(instance, candidates[i], r) *
                  instance.flows[candidates[i]].rate;
        }
      }
      for (NodeIndex v : nodes) have += instance.nodes[v].capacity[r];
      possible = need <= have * (1 + 1e-9);
    }
    if (!possible) continue;
    ++explored;
    std::vector<FlowIndex> served;
    for (std::size_t i = 0; i < n; ++i) {
      if (m >> i & 1) served.push_back(candidates[i]);
    }
    std::sort(served.begin(), served.end());
    if (auto x = ServeAll(instance, nodes, served)) {
      ExactResult result;
      result.best_nodes = nodes;
      result.served_flows = std::move(served);
      for (FlowIndex f : result.served_flows) {
        result.value += instance.flows[f].rate;
      }
      result.certificate = std::move(*x);
      return result;
    }
  }
  return std::nullopt;
}

}  // namespace

ExactResult OptimalAllocationExact(const Instance& instance,
                                   const NodeSet& nodes) {
  const NodeSet set = MakeNodeSet(nodes);
  ExactResult result;
  result.best_nodes = set;
  if (set.empty()) return result;
  std::size_t explored = 1;
  if (auto best = BestServedSubset(instance, set, 0.0, explored)) {
    result = std::move(*best);
  }
  result.explored = explored;
  return result;
}

ExactResult OptimalExact(const Instance& instance, std::size_t k) {
  if (instance.num_nodes() > kExactMaxNodes ||
      instance.num_flows() > kExactMaxFlows) {
    throw TooLarge("instance exceeds the exact-search limits (" +
                   std::to_string(kExactMaxNodes) + " nodes, " +
                   std::to_string(kExactMaxFlows) + " flows)");
  }
  ExactResult best;
  const std::size_t n = instance.num_nodes();
  const std::size_t max_size = std::min(k, n);
  std::size_t explored = 0;
  // Largest sets first: they dominate their subsets, which tightens the
  // pruning floor early.
  for (std::size_t size = max_size; size >= 1; --size) {
    std::vector<char> pick(n, 0);
    std::fill(pick.begin(), pick.begin() + size, 1);
    do {
      NodeSet nodes;
      for (NodeIndex v = 0; v < n; ++v) {
        if (pick[v]) nodes.push_back(v);
      }
      ++explored;
      double covered = 0.0;
      for (FlowIndex f : CoveredFlows(instance, nodes)) {
        covered += instance.flows[f].rate;
      }
      if (covered <= best.value) continue;
      if (auto r = BestServedSubset(instance, nodes, best.value, explored)) {
        best = std::move(*r);
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  best.explored = explored;
  return best;
}

SequenceOptimum OptimalSequenceR4(const Instance& instance, std::size_t k) {
  const std::size_t n = instance.num_nodes();
  const std::size_t max_len = std::min(k, n);
  double count = 0.0, term = 1.0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    term *= static_cast<double>(n - len + 1);
    count += term;
  }
  if (count > static_cast<double>(kExactMaxSequences)) {
    throw TooLarge("too many sequences to enumerate");
  }
  const std::vector<double> rates = InstanceRates(instance);
  SequenceOptimum best;
  std::vector<char> used(n, 0);
  std::function<void(const SequenceAllocation&)> visit =
      [&](const SequenceAllocation& prefix) {
        for (NodeIndex v = 0; v < n; ++v) {
          if (used[v]) continue;
          const SequenceAllocation next =
              ExtendAllocation(instance, prefix, v, rates);
          ++best.explored;
          const bool better = next.value > best.value ||
                              (next.value == best.value &&
                               next.sequence.size() > best.sequence.size());
          if (better) {
            best.value = next.value;
            best.sequence = next.sequence;
          }
          if (next.sequence.size() < max_len) {
            used[v] = 1;
            visit(next);
            used[v] = 0;
          }
        }
      };
  visit(SequenceAllocation{});
  return best;
}

}  // namespace nfvplace
