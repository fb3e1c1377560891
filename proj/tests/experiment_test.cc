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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "nfvplace/errors.h"

namespace nfvplace {
namespace {

const std::string kDataDir = NFVPLACE_TEST_DATA_DIR;

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "nfvplace_experiment");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunMain(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

ExperimentConfig SmallGenerated() {
  ExperimentConfig config;
  config.source.topology = Topology::kRandom;
  config.source.num_nodes = 8;
  config.source.num_flows = 20;
  config.source.topology_seed = 3;
  config.budgets = {2, 4};
  config.z_values = {1.5, 3, 6};
  config.algorithms = {Algorithm::kSsgPra, Algorithm::kSsgNra};
  config.seeds = {1, 2};
  config.workers = 1;
  return config;
}

std::string CsvWithoutRuntime(const std::vector<RunRecord> records) {
  std::vector<RunRecord> masked = records;
  for (RunRecord& r : masked) r.runtime_ms = 0.0;
  std::ostringstream out;
  WriteCsv(out, masked);
  return out.str();
}

TEST(AlgorithmNameTest, RoundTrips) {
  for (Algorithm a : {Algorithm::kSsgPra, Algorithm::kSsgNra, Algorithm::kSgPra,
                      Algorithm::kSgNra, Algorithm::kOptimal}) {
    EXPECT_EQ(ParseAlgorithm(ToString(a)), a);
  }
  EXPECT_THROW(ParseAlgorithm("greedy"), ConfigError);
}

TEST(ValidateConfigTest, RejectsBadConfigs) {
  ExperimentConfig config = SmallGenerated();
  EXPECT_NO_THROW(ValidateConfig(config));

  ExperimentConfig c = config;
  c.algorithms.clear();
  EXPECT_THROW(ValidateConfig(c), ConfigError);
  c = config;
  c.budgets = {0};
  EXPECT_THROW(ValidateConfig(c), ConfigError);
  c = config;
  c.z_values = {1.0};
  EXPECT_THROW(ValidateConfig(c), ConfigError);
  c = config;
  c.z_values.clear();
  EXPECT_THROW(ValidateConfig(c), ConfigError);
  c = config;
  c.demand_range = DemandRange{5, 1};
  EXPECT_THROW(ValidateConfig(c), ConfigError);
  c = config;
  c.source.num_nodes = 1;
  EXPECT_THROW(ValidateConfig(c), ConfigError);
  c = config;
  c.seeds.clear();
  EXPECT_THROW(ValidateConfig(c), ConfigError);
}

TEST(InstanceLabelTest, Labels) {
  ExperimentConfig config = SmallGenerated();
  EXPECT_EQ(InstanceLabel(config), "random-8x20-t3");
  config.source.topology = Topology::kAbilene;
  config.source.topology_seed = 1;
  EXPECT_EQ(InstanceLabel(config), "abilene-t1");
  config.source.path = "/some/dir/cost266.txt";
  EXPECT_EQ(InstanceLabel(config), "cost266");
}

TEST(RunSweepTest, CartesianOrderAndCount) {
  const ExperimentConfig config = SmallGenerated();
  const auto records = RunSweep(config);
  ASSERT_EQ(records.size(), 2u * 3u * 2u * 2u);
  std::size_t i = 0;
  for (std::uint64_t seed : config.seeds) {
    for (double z : config.z_values) {
      for (std::size_t k : config.budgets) {
        for (Algorithm a : config.algorithms) {
          const RunRecord& r = records[i++];
          EXPECT_EQ(r.seed, seed);
          EXPECT_EQ(r.z, z);
          EXPECT_EQ(r.k, k);
          EXPECT_EQ(r.algorithm, a);
          EXPECT_EQ(r.status, "ok");
          EXPECT_LE(r.placed_nodes.size(), k);
          EXPECT_GE(r.pct, 0.0);
          EXPECT_LE(r.pct, 1.0 + 1e-12);
          EXPECT_NEAR(r.pct, r.processed / r.total, 1e-12);
          EXPECT_GE(r.runtime_ms, 0.0);
        }
      }
    }
  }
}

TEST(RunSweepTest, DeterministicAcrossRunsAndWorkerCounts) {
  ExperimentConfig config = SmallGenerated();
  const std::string one = CsvWithoutRuntime(RunSweep(config));
  EXPECT_EQ(one, CsvWithoutRuntime(RunSweep(config)));
  config.workers = 4;
  EXPECT_EQ(one, CsvWithoutRuntime(RunSweep(config)));
}

TEST(RunSweepTest, ProcessedTrafficGrowsWithStretch) {
  ExperimentConfig config = SmallGenerated();
  config.z_values = {1.5, 2, 3, 4, 6};
  const auto records = RunSweep(config);
  std::map<std::tuple<std::uint64_t, std::size_t, Algorithm>, double> last;
  for (const RunRecord& r : records) {
    const auto key = std::make_tuple(r.seed, r.k, r.algorithm);
    if (last.count(key)) {
      EXPECT_GE(r.pct, last[key] - 1e-9)
          << ToString(r.algorithm) << " seed " << r.seed << " k " << r.k
          << " z " << r.z;
    }
    last[key] = r.pct;
  }
}

TEST(RunSweepTest, OptimalDominatesHeuristics) {
  ExperimentConfig config = SmallGenerated();
  config.source.num_nodes = 6;
  config.source.num_flows = 10;
  config.algorithms = {Algorithm::kSsgPra, Algorithm::kSsgNra, Algorithm::kSgPra,
                       Algorithm::kSgNra, Algorithm::kOptimal};
  const auto records = RunSweep(config);
  for (std::size_t i = 0; i < records.size(); i += 5) {
    const RunRecord& opt = records[i + 4];
    ASSERT_EQ(opt.algorithm, Algorithm::kOptimal);
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_LE(records[i + j].processed, opt.processed + 1e-6);
    }
  }
}

TEST(RunSweepTest, ExampleFileKeepsCapacities) {
  ExperimentConfig config;
  config.source.path = kDataDir + "/three_node.json";
  config.budgets = {2};
  config.algorithms = {Algorithm::kOptimal, Algorithm::kSsgPra};
  const auto records = RunSweep(config);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].instance, "three_node");
  EXPECT_NEAR(records[0].processed, 2.03, 1e-9);
  EXPECT_NEAR(records[0].pct, 1.0, 1e-9);
  EXPECT_EQ(records[0].placed_nodes, (std::vector<std::string>{"v2", "v3"}));
  EXPECT_NEAR(records[0].z, 1.0, 1e-9);
  // The example has unit stretch, which the primal-dual allocators reject.
  EXPECT_EQ(records[1].status, "ZTooSmall");
  EXPECT_TRUE(std::isnan(records[1].pct));
}

TEST(CsvTest, HeaderAndRowSchema) {
  ExperimentConfig config = SmallGenerated();
  config.seeds = {1};
  config.z_values = {2};
  std::ostringstream out;
  WriteCsv(out, RunSweep(config));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kCsvHeader);
  const std::size_t columns = SplitCsv(line).size();
  EXPECT_EQ(columns, 11u);
  int rows = 0;
  while (std::getline(in, line)) {
    const auto fields = SplitCsv(line);
    ASSERT_EQ(fields.size(), columns) << line;
    EXPECT_EQ(fields[0], "random-8x20-t3");
    EXPECT_NO_THROW(std::stod(fields[5]));
    EXPECT_NO_THROW(std::stod(fields[7]));
    EXPECT_EQ(fields[10], "ok");
    ++rows;
  }
  EXPECT_EQ(rows, 4);
}

TEST(CsvTest, FailedCellHasNanAndKind) {
  RunRecord r;
  r.instance = "x";
  r.k = 3;
  r.z = 1.5;
  r.seed = 2;
  r.processed = r.pct = std::nan("");
  r.total = 4;
  r.status = "ZTooSmall";
  EXPECT_EQ(FormatCsvRow(r), "x,ssg-pra,3,1.5,2,nan,4,nan,0,,ZTooSmall");
}

TEST(CliTest, HelpExitsZero) {
  const CliRun run = RunCli({"--help"});
  EXPECT_EQ(run.code, 0);
  EXPECT_NE(run.out.find("--budget"), std::string::npos);
}

TEST(CliTest, ConfigErrorsExitOne) {
  EXPECT_EQ(RunCli({"--budget", "2"}).code, 1);
  EXPECT_EQ(RunCli({"--generate", "--budget", "2", "--z", "2", "--bogus"}).code, 1);
  EXPECT_EQ(RunCli({"--generate", "--budget", "2", "--z", "2", "--algorithm", ""})
                .code,
            1);
  EXPECT_EQ(RunCli({"--generate", "--budget", "2", "--z", "0.5"}).code, 1);
  EXPECT_EQ(
      RunCli({"--generate", "--budget", "2", "--z", "2", "--demand-range", "3"}).code,
      1);
}

TEST(CliTest, MissingFileExitsTwo) {
  const CliRun run =
      RunCli({"--instance", kDataDir + "/missing.json", "--budget", "2"});
  EXPECT_EQ(run.code, 2);
  EXPECT_FALSE(run.err.empty());
}

TEST(CliTest, ExampleToStdout) {
  const CliRun run = RunCli({"--instance", kDataDir + "/three_node.json",
                             "--budget", "1,2", "--algorithm", "optimal"});
  ASSERT_EQ(run.code, 0) << run.err;
  std::istringstream in(run.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kCsvHeader);
  std::getline(in, line);
  auto fields = SplitCsv(line);
  EXPECT_EQ(fields[1], "optimal");
  EXPECT_EQ(fields[5], "1.02");
  EXPECT_EQ(fields[9], "v2");
  std::getline(in, line);
  fields = SplitCsv(line);
  EXPECT_EQ(fields[5], "2.03");
  EXPECT_EQ(fields[7], "1");
  EXPECT_EQ(fields[9], "v2;v3");
}

TEST(CliTest, GeneratedSweepMatchesLibrary) {
  const CliRun run =
      RunCli({"--generate", "--topology", "random", "--nodes", "8", "--flows",
              "20", "--instance-seed", "3", "--budget", "2,4", "--z", "1.5,3,6",
              "--seed", "1,2", "--algorithm", "ssg-pra,ssg-nra", "--workers", "2"});
  ASSERT_EQ(run.code, 0) << run.err;
  std::istringstream cli(run.out);
  std::istringstream lib(CsvWithoutRuntime(RunSweep(SmallGenerated())));
  std::string a, b;
  int rows = 0;
  while (std::getline(lib, b)) {
    ASSERT_TRUE(std::getline(cli, a));
    auto fa = SplitCsv(a), fb = SplitCsv(b);
    if (rows > 0) fa[8] = fb[8];
    EXPECT_EQ(fa, fb);
    ++rows;
  }
  EXPECT_EQ(rows, 25);
  EXPECT_FALSE(std::getline(cli, a));
}

}  // namespace
}  // namespace nfvplace
