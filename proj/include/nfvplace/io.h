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

// Instance ingestion and serialization.
//
// JSON instance schema:
//
//   { "resources": ["r1", ...],
//     "nodes":     [{"id": "v1", "capacity": {"r1": 10, ...}}, ...],
//     "edges":     [{"u": "v1", "v": "v2", "cost": 1}, ...],
//     "functions": [{"id": "fw", "beta": {"r1": 4, ...}}, ...],
//     "flows":     [{"id": "f1", "src": "v1", "dst": "v2", "rate": 0.5,
//                    "functions": ["fw"], "path": ["v1", "v2"]}, ...] }
//
// "path" is optional; missing paths are computed with the requested metric.
// Edges are undirected.
//
// SNDlib native files contribute NODES, LINKS and DEMANDS. Functions and
// capacities come from a companion JSON config:
//
//   { "resources": ["r1", ...],
//     "functions": [{"id": "fw", "beta": {"r1": 2}}, ...],
//     "default_functions": ["fw"],
//     "flow_functions": {"<demand id>": ["fw", ...]},
//     "default_capacity": {"r1": 100},
//     "capacities": {"<node id>": {"r1": 50}} }
//
// Every key is optional except "resources" and "functions"; a flow with no
// entry in "flow_functions" gets "default_functions".

#ifndef NFVPLACE_IO_H_
#define NFVPLACE_IO_H_

#include <optional>
#include <string>

#include "json.hpp"
#include "nfvplace/model.h"

namespace nfvplace {

enum class InstanceFormat { kJson, kSndlibNative };

nlohmann::json InstanceToJson(const Instance& instance);

// Parses and fully validates. Throws ParseError / ValidationError.
Instance InstanceFromJson(const nlohmann::json& doc,
                          PathMetric metric = PathMetric::kRoutingCost);

// Reads NODES / LINKS / DEMANDS. The result has no resources or functions
// and no paths; it passes ValidateTopology only. Demands with a
// non-positive value are skipped. Throws ParseError.
Instance ParseSndlibTopology(const std::string& text);

// Merges functions and capacities from a companion config into a
// topology-only instance.
Instance ApplyCompanionConfig(Instance instance, const nlohmann::json& config);

// Loads a fully validated instance with paths filled in. SNDlib input
// requires `companion_config_path`.
Instance LoadInstance(const std::string& path, InstanceFormat format,
                      PathMetric metric = PathMetric::kRoutingCost,
                      const std::optional<std::string>& companion_config_path =
                          std::nullopt);

// Reads a whole file; throws ParseError(0, ...) when unreadable.
std::string ReadFile(const std::string& path);

void SaveInstanceJson(const Instance& instance, const std::string& path);

}  // namespace nfvplace

#endif  // NFVPLACE_IO_H_
