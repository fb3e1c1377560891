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

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nfvplace/errors.h"
#include "nfvplace/experiment.h"

namespace nfvplace {
namespace {

double ParseNumber(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("bad number '" + text + "' in " + what);
  }
  return value;
}

DemandRange ParseDemandRange(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("--demand-range expects LO:HI, got '" + text + "'");
  }
  return {ParseNumber(text.substr(0, colon), "--demand-range"),
          ParseNumber(text.substr(colon + 1), "--demand-range")};
}

std::vector<Algorithm> ParseAlgorithms(const std::string& text) {
  std::vector<Algorithm> out;
  std::stringstream in(text);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (!name.empty()) out.push_back(ParseAlgorithm(name));
  }
  return out;
}

}  // namespace

int RunMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Runs VNF placement and allocation algorithms over a grid of "
               "seeds, resource stretch Z and budget k, writing one CSV row per "
               "cell."};
  app.name("nfvplace_experiment");

  ExperimentConfig config;
  std::string format = "json";
  std::string topology = "abilene";
  std::string algorithms = "ssg-pra,ssg-nra,sg-pra,sg-nra";
  std::string demand_range;
  std::string path_metric = "cost";
  std::string output;
  bool generate = false;

  auto* instance = app.add_option("--instance", config.source.path,
                                  "Instance file (JSON or SNDlib native)");
  auto* gen = app.add_flag("--generate", generate, "Use a synthetic topology");
  instance->excludes(gen);
  app.add_option("--format", format, "Instance file format")
      ->check(CLI::IsMember({"json", "sndlib"}))
      ->capture_default_str();
  app.add_option("--capacity-config", config.source.capacity_config,
                 "Companion JSON with functions and capacities for SNDlib input");
  app.add_option("--topology", topology, "Synthetic topology")
      ->check(CLI::IsMember({"line", "ring", "random", "abilene"}))
      ->capture_default_str();
  app.add_option("--nodes", config.source.num_nodes, "Synthetic node count");
  app.add_option("--flows", config.source.num_flows, "Synthetic flow count");
  app.add_option("--instance-seed", config.source.topology_seed,
                 "Seed of the synthetic topology and its flow rates")
      ->capture_default_str();
  app.add_option("--budget", config.budgets, "Budgets k, comma separated")
      ->delimiter(',');
  app.add_option("--z", config.z_values, "Resource stretch values, comma separated")
      ->delimiter(',');
  app.add_option("--algorithm", algorithms,
                 "Comma-separated subset of ssg-pra, ssg-nra, sg-pra, sg-nra, "
                 "optimal")
      ->capture_default_str();
  app.add_option("--seed", config.seeds, "Demand seeds, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--demand-range", demand_range,
                 "Unit demand range LO:HI (default 0:20 for generated input)");
  app.add_option("--resources", config.num_resources,
                 "Resource types when drawing demands")
      ->capture_default_str();
  app.add_option("--path-metric", path_metric, "Routing metric")
      ->check(CLI::IsMember({"cost", "hops"}))
      ->capture_default_str();
  app.add_option("--workers", config.workers, "Worker threads (0: all cores)")
      ->capture_default_str();
  app.add_option("--output", output, "CSV output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  std::vector<RunRecord> records;
  try {
    if (config.source.path.empty() && !generate) {
      throw ConfigError("give --instance PATH or --generate");
    }
    config.source.format =
        format == "json" ? InstanceFormat::kJson : InstanceFormat::kSndlibNative;
    config.source.topology = ParseTopology(topology);
    config.algorithms = ParseAlgorithms(algorithms);
    config.path_metric =
        path_metric == "cost" ? PathMetric::kRoutingCost : PathMetric::kHopCount;
    if (!demand_range.empty()) config.demand_range = ParseDemandRange(demand_range);
    records = RunSweep(config);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (output.empty()) {
    WriteCsv(out, records);
    return 0;
  }
  std::ofstream file(output);
  WriteCsv(file, records);
  file.close();
  if (!file) {
    err << "error: cannot write " << output << "\n";
    return 2;
  }
  err << "wrote " << records.size() << " records to " << output << "\n";
  return 0;
}

}  // namespace nfvplace
