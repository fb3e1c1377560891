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

#include "nfvplace/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <ostream>
#include <thread>

#include "nfvplace/baseline_oracle.h"
#include "nfvplace/errors.h"
#include "nfvplace/integral_alloc.h"
#include "nfvplace/placement.h"

namespace nfvplace {
namespace {

using Clock = std::chrono::steady_clock;

double ElapsedMs(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

bool IsGenerated(const ExperimentConfig& config) {
  return config.source.path.empty();
}

bool DrawsDemands(const ExperimentConfig& config) {
  return IsGenerated(config) || config.demand_range.has_value();
}

std::optional<PlacementAlgorithm> PlacementOf(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kSsgPra:
    case Algorithm::kSsgNra:
      return PlacementAlgorithm::kSsg;
    case Algorithm::kSgPra:
    case Algorithm::kSgNra:
      return PlacementAlgorithm::kSg;
    case Algorithm::kOptimal:
      return std::nullopt;
  }
  return std::nullopt;
}

bool UsesPra(Algorithm algorithm) {
  return algorithm == Algorithm::kSsgPra || algorithm == Algorithm::kSgPra;
}

struct Cell {
  std::uint64_t seed;
  std::optional<double> z;
};

// Placement of the largest budget, or the error that stopped it.
struct PlacementRun {
  std::optional<PlacementResult> result;
  std::string error;
};

void Fill(RunRecord& record, const Instance& instance, double processed) {
  record.processed = processed;
  record.total = instance.total_rate();
  record.pct = record.total > 0 ? processed / record.total : 0.0;
}

void MarkFailed(RunRecord& record, const std::string& kind) {
  record.status = kind;
  record.processed = record.pct = std::nan("");
}

std::vector<RunRecord> RunCell(const Instance& base,
                               const ExperimentConfig& config,
                               const std::string& label, const Cell& cell) {
  std::vector<RunRecord> records;
  for (std::size_t k : config.budgets) {
    for (Algorithm algorithm : config.algorithms) {
      RunRecord r;
      r.instance = label;
      r.algorithm = algorithm;
      r.k = k;
      r.seed = cell.seed;
      r.z = cell.z.value_or(std::nan(""));
      records.push_back(std::move(r));
    }
  }
  Instance instance;
  try {
    instance = CellInstance(base, config, cell.seed, cell.z);
  } catch (const Error& e) {
    for (RunRecord& r : records) MarkFailed(r, e.kind());
    return records;
  }
  if (!cell.z) {
    // Report the stretch the file capacities give over all nodes.
    double z = std::numeric_limits<double>::infinity();
    const double d_max = MaxFlowDemand(instance);
    for (const Node& node : instance.nodes) {
      for (double c : node.capacity) z = std::min(z, c / d_max);
    }
    for (RunRecord& r : records) r.z = z;
  }

  const std::size_t max_k =
      *std::max_element(config.budgets.begin(), config.budgets.end());
  std::map<PlacementAlgorithm, PlacementRun> placements;
  for (Algorithm algorithm : config.algorithms) {
    const auto placement = PlacementOf(algorithm);
    if (!placement || placements.count(*placement)) continue;
    PlacementRun& run = placements[*placement];
    try {
      run.result = Place(instance, max_k, *placement);
    } catch (const Error& e) {
      run.error = e.kind();
    }
  }

  for (RunRecord& r : records) {
    r.total = instance.total_rate();
    const auto placement = PlacementOf(r.algorithm);
    try {
      if (!placement) {
        const auto start = Clock::now();
        const ExactResult exact = OptimalExact(instance, r.k);
        r.runtime_ms = ElapsedMs(start);
        for (NodeIndex v : exact.best_nodes) {
          r.placed_nodes.push_back(instance.nodes[v].id);
        }
        Fill(r, instance, exact.value);
        continue;
      }
      const PlacementRun& run = placements.at(*placement);
      if (!run.result) {
        MarkFailed(r, run.error);
        continue;
      }
      const PlacementResult placed = run.result->Truncated(r.k);
      for (NodeIndex v : placed.sequence) {
        r.placed_nodes.push_back(instance.nodes[v].id);
      }
      const auto start = Clock::now();
      const NormalizedInstance norm = Normalize(instance, placed.set);
      const IntegralAssignment assignment =
          UsesPra(r.algorithm) ? Pra(instance, norm)
                               : Nra(instance, norm, placed.sequence);
      r.runtime_ms = placed.prefix_runtime_ms.back() + ElapsedMs(start);
      Fill(r, instance, ProcessedTraffic(instance, assignment));
    } catch (const Error& e) {
      MarkFailed(r, e.kind());
    }
  }
  return records;
}

}  // namespace

const char* ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kSsgPra:
      return "ssg-pra";
    case Algorithm::kSsgNra:
      return "ssg-nra";
    case Algorithm::kSgPra:
      return "sg-pra";
    case Algorithm::kSgNra:
      return "sg-nra";
    case Algorithm::kOptimal:
      return "optimal";
  }
  return "?";
}

Algorithm ParseAlgorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::kSsgPra, Algorithm::kSsgNra, Algorithm::kSgPra,
                      Algorithm::kSgNra, Algorithm::kOptimal}) {
    if (name == ToString(a)) return a;
  }
  throw ConfigError("unknown algorithm '" + name + "'");
}

void ValidateConfig(const ExperimentConfig& config) {
  if (config.budgets.empty()) throw ConfigError("no budget given");
  if (config.algorithms.empty()) throw ConfigError("no algorithm given");
  if (config.seeds.empty()) throw ConfigError("no seed given");
  for (std::size_t k : config.budgets) {
    if (k == 0) throw ConfigError("budgets must be positive");
  }
  for (double z : config.z_values) {
    if (!(z > 1.0)) throw ConfigError("Z values must exceed 1");
  }
  if (DrawsDemands(config) && config.z_values.empty()) {
    throw ConfigError("drawing demands needs at least one Z value");
  }
  if (config.num_resources == 0) throw ConfigError("need at least one resource");
  if (config.demand_range) {
    const DemandRange& d = *config.demand_range;
    if (!(d.lo >= 0.0) || !(d.hi >= d.lo)) {
      throw ConfigError("demand range must satisfy 0 <= LO <= HI");
    }
  }
  if (IsGenerated(config) && config.source.topology != Topology::kAbilene &&
      (config.source.num_nodes < 2 || config.source.num_flows == 0)) {
    throw ConfigError("generated topologies need --nodes >= 2 and --flows >= 1");
  }
  if (!IsGenerated(config) && config.source.format == InstanceFormat::kSndlibNative &&
      config.source.capacity_config.empty() && !config.demand_range) {
    throw ConfigError("SNDlib input needs --capacity-config or --demand-range");
  }
}

std::string InstanceLabel(const ExperimentConfig& config) {
  const InstanceSource& s = config.source;
  if (!IsGenerated(config)) {
    return std::filesystem::path(s.path).stem().string();
  }
  std::string label;
  switch (s.topology) {
    case Topology::kAbilene:
      label = "abilene";
      break;
    case Topology::kLine:
      label = "line";
      break;
    case Topology::kRing:
      label = "ring";
      break;
    case Topology::kRandom:
      label = "random";
      break;
  }
  if (s.topology != Topology::kAbilene) {
    label += "-" + std::to_string(s.num_nodes) + "x" + std::to_string(s.num_flows);
  }
  return label + "-t" + std::to_string(s.topology_seed);
}

Instance LoadBaseInstance(const ExperimentConfig& config) {
  const InstanceSource& s = config.source;
  if (IsGenerated(config)) {
    return ComputePaths(
        SyntheticTopology(s.topology, s.num_nodes, s.num_flows, s.topology_seed),
        config.path_metric);
  }
  if (s.format == InstanceFormat::kSndlibNative && s.capacity_config.empty()) {
    return ComputePaths(ParseSndlibTopology(ReadFile(s.path)), config.path_metric);
  }
  return LoadInstance(s.path, s.format, config.path_metric,
                      s.capacity_config.empty()
                          ? std::nullopt
                          : std::optional<std::string>(s.capacity_config));
}

Instance CellInstance(const Instance& base, const ExperimentConfig& config,
                      std::uint64_t seed, std::optional<double> z) {
  if (DrawsDemands(config)) {
    return GenerateDemands(base, config.demand_range.value_or(DemandRange{}),
                           config.num_resources, z.value(), seed);
  }
  return z ? ScaleCapacities(base, *z) : base;
}

std::vector<RunRecord> RunSweep(const ExperimentConfig& config) {
  ValidateConfig(config);
  const Instance base = LoadBaseInstance(config);
  const std::string label = InstanceLabel(config);

  std::vector<Cell> cells;
  for (std::uint64_t seed : config.seeds) {
    if (config.z_values.empty()) {
      cells.push_back({seed, std::nullopt});
    }
    for (double z : config.z_values) cells.push_back({seed, z});
  }

  std::vector<std::vector<RunRecord>> results(cells.size());
  std::size_t workers = config.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      results[i] = RunCell(base, config, label, cells[i]);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::vector<RunRecord> records;
  for (auto& cell : results) {
    for (RunRecord& r : cell) records.push_back(std::move(r));
  }
  return records;
}

std::string FormatCsvRow(const RunRecord& r) {
  std::string placed;
  for (const std::string& id : r.placed_nodes) {
    if (!placed.empty()) placed += ';';
    placed += id;
  }
  return r.instance + "," + ToString(r.algorithm) + "," + std::to_string(r.k) +
         "," + FormatDouble(r.z) + "," + std::to_string(r.seed) + "," +
         FormatDouble(r.processed) + "," + FormatDouble(r.total) + "," +
         FormatDouble(r.pct) + "," + FormatDouble(r.runtime_ms) + "," + placed +
         "," + r.status;
}

void WriteCsv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kCsvHeader << '\n';
  for (const RunRecord& r : records) out << FormatCsvRow(r) << '\n';
}

}  // namespace nfvplace
