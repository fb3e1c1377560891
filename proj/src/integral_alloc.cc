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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "nfvplace/errors.h"
#include "nfvplace/lp_solver.h"

namespace nfvplace {
namespace {

constexpr double kFitTol = 1e-9;
constexpr double kProcessedTol = 1e-7;

void RequireStretch(const NormalizedInstance& norm) {
  if (!(norm.z > 1.0 + kZEps)) {
    throw ZTooSmall("resource stretch Z = " + std::to_string(norm.z) +
                    " must exceed 1");
  }
}

// Shared bookkeeping for both allocators.
class Allocation {
 public:
  Allocation(const Instance& instance, const NormalizedInstance& norm)
      : instance_(instance), norm_(norm), num_r_(instance.num_resources()) {
    out_.node_of_flow.assign(instance.num_flows(), std::nullopt);
    out_.residual.resize(instance.num_nodes() * num_r_);
    for (NodeIndex v = 0; v < instance.num_nodes(); ++v) {
      for (ResourceIndex r = 0; r < num_r_; ++r) {
        out_.residual[v * num_r_ + r] = instance.nodes[v].capacity[r];
      }
    }
    out_.prices.assign(instance.num_nodes() * num_r_, 0.0);
    in_set_.assign(instance.num_nodes(), 0);
    for (NodeIndex v : norm.nodes) in_set_.at(v) = 1;
  }

  bool InSet(NodeIndex v) const { return in_set_[v]; }

  bool IsFree(FlowIndex f) const {
    for (ResourceIndex r = 0; r < num_r_; ++r) {
      if (norm_.demand(f, r) > 0.0) return false;
    }
    return true;
  }

  bool Fits(FlowIndex f, NodeIndex v) const {
    const double rate = instance_.flows[f].rate;
    for (ResourceIndex r = 0; r < num_r_; ++r) {
      const double need = FlowTotalDemand(instance_, f, r) * rate;
      const double cap = instance_.nodes[v].capacity[r];
      if (need > out_.residual[v * num_r_ + r] + kFitTol * std::max(1.0, cap)) {
        return false;
      }
    }
    return true;
  }

  void Assign(FlowIndex f, NodeIndex v) {
    const double rate = instance_.flows[f].rate;
    for (ResourceIndex r = 0; r < num_r_; ++r) {
      out_.residual[v * num_r_ + r] -= FlowTotalDemand(instance_, f, r) * rate;
    }
    out_.assignment.Set(f, v, rate);
    out_.assigned.push_back(f);
    out_.node_of_flow[f] = v;
  }

  // Zero-demand flows go to the first placed node on their path.
  void AssignFreeFlows() {
    for (FlowIndex f : ById()) {
      if (!IsFree(f)) continue;
      for (NodeIndex v : instance_.flows[f].path) {
        if (InSet(v)) {
          Assign(f, v);
          break;
        }
      }
    }
  }

  // Flow indices ordered by id.
  std::vector<FlowIndex> ById() const {
    std::vector<FlowIndex> order(instance_.num_flows());
    for (FlowIndex f = 0; f < order.size(); ++f) order[f] = f;
    std::stable_sort(order.begin(), order.end(), [&](FlowIndex a, FlowIndex b) {
      return instance_.flows[a].id < instance_.flows[b].id;
    });
    return order;
  }

  double& price(NodeIndex v, ResourceIndex r) { return out_.prices[v * num_r_ + r]; }

  double PricedDemand(FlowIndex f, NodeIndex v) const {
    double total = 0.0;
    for (ResourceIndex r = 0; r < num_r_; ++r) {
      total += norm_.demand(f, r) * out_.prices[v * num_r_ + r];
    }
    return total;
  }

  void ResetPrices(NodeIndex v) {
    for (ResourceIndex r = 0; r < num_r_; ++r) {
      price(v, r) = 1.0 / norm_.capacity(v, r);
    }
  }

  void RaisePrices(FlowIndex f, NodeIndex v, double base) {
    for (ResourceIndex r = 0; r < num_r_; ++r) {
      price(v, r) *=
          std::pow(base, norm_.demand(f, r) / (norm_.capacity(v, r) - 1.0));
    }
  }

  double WeightedPrice(NodeIndex v) const {
    double total = 0.0;
    for (ResourceIndex r = 0; r < num_r_; ++r) {
      total += norm_.capacity(v, r) * out_.prices[v * num_r_ + r];
    }
    return total;
  }

  IntegralAssignment& out() { return out_; }

 private:
  const Instance& instance_;
  const NormalizedInstance& norm_;
  std::size_t num_r_;
  std::vector<char> in_set_;
  IntegralAssignment out_;
};

}  // namespace

NormalizedInstance Normalize(const Instance& instance, const NodeSet& nodes) {
  if (nodes.empty()) throw InvalidRange("normalization needs a placed node");
  NormalizedInstance norm;
  norm.nodes = MakeNodeSet(nodes);
  norm.num_resources = instance.num_resources();
  norm.d_max = MaxFlowDemand(instance);
  if (!(norm.d_max > 0.0)) {
    throw DegenerateInstance("every flow has zero demand");
  }
  const std::size_t num_r = norm.num_resources;
  norm.d.resize(instance.num_flows() * num_r);
  for (FlowIndex f = 0; f < instance.num_flows(); ++f) {
    for (ResourceIndex r = 0; r < num_r; ++r) {
      norm.d[f * num_r + r] =
          FlowTotalDemand(instance, f, r) * instance.flows[f].rate / norm.d_max;
    }
  }
  norm.c_bar.resize(instance.num_nodes() * num_r);
  for (NodeIndex v = 0; v < instance.num_nodes(); ++v) {
    for (ResourceIndex r = 0; r < num_r; ++r) {
      norm.c_bar[v * num_r + r] = instance.nodes[v].capacity[r] / norm.d_max;
    }
  }
  norm.z = std::numeric_limits<double>::infinity();
  for (NodeIndex v : norm.nodes) {
    if (v >= instance.num_nodes()) throw IndexOutOfRange("placed node index");
    for (ResourceIndex r = 0; r < num_r; ++r) {
      norm.z = std::min(norm.z, norm.c_bar[v * num_r + r]);
    }
  }
  return norm;
}

IntegralAssignment Pra(const Instance& instance, const NormalizedInstance& norm) {
  RequireStretch(norm);
  Allocation alloc(instance, norm);
  const double num_r = static_cast<double>(instance.num_resources());
  const double threshold =
      std::exp(norm.z - 1.0) * num_r * static_cast<double>(norm.nodes.size());
  for (NodeIndex v : norm.nodes) alloc.ResetPrices(v);
  alloc.AssignFreeFlows();

  // Remaining flows (id order) with their still-eligible nodes (id order).
  struct Candidate {
    FlowIndex flow;
    std::vector<NodeIndex> nodes;
  };
  std::vector<Candidate> remaining;
  std::vector<NodeIndex> node_order = norm.nodes;
  std::stable_sort(node_order.begin(), node_order.end(),
                   [&](NodeIndex a, NodeIndex b) {
                     return instance.nodes[a].id < instance.nodes[b].id;
                   });
  for (FlowIndex f : alloc.ById()) {
    if (alloc.out().node_of_flow[f]) continue;
    const auto& path = instance.flows[f].path;
    Candidate c{f, {}};
    for (NodeIndex v : node_order) {
      if (std::find(path.begin(), path.end(), v) != path.end()) c.nodes.push_back(v);
    }
    if (!c.nodes.empty()) remaining.push_back(std::move(c));
  }

  while (!remaining.empty()) {
    double weighted = 0.0;
    for (NodeIndex v : norm.nodes) weighted += alloc.WeightedPrice(v);
    if (weighted >= threshold) {
      alloc.out().stopped_by_threshold = true;
      break;
    }
    std::size_t best = 0;
    NodeIndex best_node = 0;
    double best_ratio = -1.0;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      const Candidate& c = remaining[i];
      NodeIndex cheapest = c.nodes.front();
      double cheapest_price = std::numeric_limits<double>::infinity();
      for (NodeIndex v : c.nodes) {
        double p = 0.0;
        for (ResourceIndex r = 0; r < instance.num_resources(); ++r) {
          p += alloc.price(v, r);
        }
        if (p < cheapest_price) {
          cheapest_price = p;
          cheapest = v;
        }
      }
      const double ratio =
          instance.flows[c.flow].rate / alloc.PricedDemand(c.flow, cheapest);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = i;
        best_node = cheapest;
      }
    }
    Candidate& chosen = remaining[best];
    if (!alloc.Fits(chosen.flow, best_node)) {
      ++alloc.out().capacity_rejections;
      chosen.nodes.erase(
          std::find(chosen.nodes.begin(), chosen.nodes.end(), best_node));
      if (chosen.nodes.empty()) remaining.erase(remaining.begin() + best);
      continue;
    }
    alloc.Assign(chosen.flow, best_node);
    alloc.RaisePrices(chosen.flow, best_node, threshold);
    remaining.erase(remaining.begin() + best);
  }
  return std::move(alloc.out());
}

IntegralAssignment Nra(const Instance& instance, const NormalizedInstance& norm,
                       const NodeSequence& order) {
  RequireStretch(norm);
  if (MakeNodeSet(order) != norm.nodes || order.size() != norm.nodes.size()) {
    throw InvalidRange("node order must be a permutation of the placed set");
  }
  Allocation alloc(instance, norm);
  const double threshold =
      std::exp(norm.z - 1.0) * static_cast<double>(instance.num_resources());
  alloc.AssignFreeFlows();
  const std::vector<FlowIndex> flows_by_id = alloc.ById();

  for (NodeIndex v : order) {
    alloc.ResetPrices(v);
    std::vector<FlowIndex> remaining;
    for (FlowIndex f : flows_by_id) {
      if (alloc.out().node_of_flow[f]) continue;
      const auto& path = instance.flows[f].path;
      if (std::find(path.begin(), path.end(), v) != path.end()) {
        remaining.push_back(f);
      }
    }
    while (!remaining.empty()) {
      if (alloc.WeightedPrice(v) >= threshold) {
        alloc.out().stopped_by_threshold = true;
        break;
      }
      std::size_t best = 0;
      double best_ratio = -1.0;
      for (std::size_t i = 0; i < remaining.size(); ++i) {
        const FlowIndex f = remaining[i];
        const double ratio = instance.flows[f].rate / alloc.PricedDemand(f, v);
        if (ratio > best_ratio) {
          best_ratio = ratio;
          best = i;
        }
      }
      const FlowIndex f = remaining[best];
      remaining.erase(remaining.begin() + best);
      if (!alloc.Fits(f, v)) {
        ++alloc.out().capacity_rejections;
        continue;
      }
      alloc.Assign(f, v);
      alloc.RaisePrices(f, v, threshold);
    }
  }
  return std::move(alloc.out());
}

double ProcessedTraffic(const Instance& instance, const AssignmentMatrix& x) {
  const std::vector<double> totals = x.FlowTotals(instance.num_flows());
  double processed = 0.0;
  for (FlowIndex f = 0; f < instance.num_flows(); ++f) {
    const double rate = instance.flows[f].rate;
    if (totals[f] >= rate - kProcessedTol * std::max(1.0, rate)) {
      processed += rate;
    }
  }
  return processed;
}

double ProcessedTraffic(const Instance& instance, const IntegralAssignment& a) {
  return ProcessedTraffic(instance, a.assignment);
}

double NormalizedFractionalOptimum(const Instance& instance,
                                   const NormalizedInstance& norm) {
  std::vector<AssignmentMatrix::Key> cols;
  for (FlowIndex f = 0; f < instance.num_flows(); ++f) {
    for (NodeIndex v : norm.nodes) {
      const auto& path = instance.flows[f].path;
      if (std::find(path.begin(), path.end(), v) != path.end()) {
        cols.emplace_back(f, v);
      }
    }
  }
  LinearProgram lp(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    lp.objective[c] = instance.flows[cols[c].first].rate;
  }
  for (NodeIndex v : norm.nodes) {
    for (ResourceIndex r = 0; r < norm.num_resources; ++r) {
      std::vector<double> row(cols.size(), 0.0);
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].second == v) row[c] = norm.demand(cols[c].first, r);
      }
      lp.AddLeq(std::move(row), norm.capacity(v, r));
    }
  }
  for (FlowIndex f = 0; f < instance.num_flows(); ++f) {
    std::vector<double> row(cols.size(), 0.0);
    bool any = false;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].first == f) {
        row[c] = 1.0;
        any = true;
      }
    }
    if (any) lp.AddLeq(std::move(row), 1.0);
  }
  const LpSolution sol = Solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw NumericalFailure("normalized fractional LP is " +
                           std::string(ToString(sol.status)));
  }
  return sol.objective_value;
}

}  // namespace nfvplace
