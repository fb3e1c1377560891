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

// Sweeps over seeds, resource stretch Z, budget k and algorithm, with one
// CSV row per cell.

#ifndef NFVPLACE_EXPERIMENT_H_
#define NFVPLACE_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nfvplace/generate.h"
#include "nfvplace/io.h"
#include "nfvplace/model.h"

namespace nfvplace {

enum class Algorithm { kSsgPra, kSsgNra, kSgPra, kSgNra, kOptimal };

const char* ToString(Algorithm algorithm);
// Accepts ssg-pra, ssg-nra, sg-pra, sg-nra and optimal. Throws ConfigError.
Algorithm ParseAlgorithm(const std::string& name);

struct InstanceSource {
  // File input; empty means a generated topology.
  std::string path;
  InstanceFormat format = InstanceFormat::kJson;
  // Companion functions/capacities for SNDlib input.
  std::string capacity_config;

  Topology topology = Topology::kAbilene;
  std::size_t num_nodes = 0;
  std::size_t num_flows = 0;
  std::uint64_t topology_seed = 1;
};

struct ExperimentConfig {
  InstanceSource source;
  std::vector<std::size_t> budgets;
  // Empty keeps the capacities of a file instance as they are.
  std::vector<double> z_values;
  std::vector<Algorithm> algorithms;
  std::vector<std::uint64_t> seeds = {1};
  // Set: fresh unit demands are drawn per seed. Generated instances
  // always draw, from [0, 20] unless given.
  std::optional<DemandRange> demand_range;
  std::size_t num_resources = 2;
  PathMetric path_metric = PathMetric::kRoutingCost;
  // 0 uses the hardware concurrency.
  std::size_t workers = 0;
};

// Throws ConfigError.
void ValidateConfig(const ExperimentConfig& config);

// Short label for the instance column.
std::string InstanceLabel(const ExperimentConfig& config);

// Topology, flows and paths before any per-seed demand draw.
Instance LoadBaseInstance(const ExperimentConfig& config);

// Instance of one (seed, Z) cell; `z` empty keeps the base capacities.
Instance CellInstance(const Instance& base, const ExperimentConfig& config,
                      std::uint64_t seed, std::optional<double> z);

struct RunRecord {
  std::string instance;
  Algorithm algorithm = Algorithm::kSsgPra;
  std::size_t k = 0;
  double z = 0.0;
  std::uint64_t seed = 0;
  double processed = 0.0;
  double total = 0.0;
  double pct = 0.0;  // processed / total
  double runtime_ms = 0.0;
  std::vector<std::string> placed_nodes;  // ids, in placement order
  std::string status = "ok";              // error kind when the cell failed
};

// Runs every (seed, Z, k, algorithm) cell. Records come back in that
// cartesian order whatever the worker count. Cell failures are reported in
// the status column. Throws ConfigError for an invalid config and module
// errors when the base instance cannot be built.
std::vector<RunRecord> RunSweep(const ExperimentConfig& config);

inline constexpr char kCsvHeader[] =
    "instance,algorithm,k,z,seed,processed,total,pct,runtime_ms,"
    "placed_nodes,status";

std::string FormatCsvRow(const RunRecord& record);
void WriteCsv(std::ostream& out, const std::vector<RunRecord>& records);

// Command-line entry point. Returns 0 on success, 1 on a configuration
// error and 2 on a runtime error.
int RunMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace nfvplace

#endif  // NFVPLACE_EXPERIMENT_H_
