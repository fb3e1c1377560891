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

#include "nfvplace/io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nfvplace/errors.h"

namespace nfvplace {
namespace {

using nlohmann::json;

const json& Require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(0, where + ": missing key '" + key + "'");
  }
  return obj.at(key);
}

std::vector<double> ResourceVector(const Instance& instance, const json& obj,
                                   const std::string& where) {
  if (!obj.is_object()) throw ParseError(0, where + ": expected an object");
  std::vector<double> values(instance.num_resources(), 0.0);
  for (const auto& [rid, value] : obj.items()) {
    if (!value.is_number()) throw ParseError(0, where + ": non-numeric value");
    try {
      values[instance.resource_index(rid)] = value.get<double>();
    } catch (const UnknownId&) {
      throw ValidationError(where + ": unknown resource '" + rid + "'");
    }
  }
  return values;
}

json ResourceObject(const Instance& instance, const std::vector<double>& v) {
  json obj = json::object();
  for (ResourceIndex r = 0; r < instance.num_resources(); ++r) {
    obj[instance.resources[r]] = v[r];
  }
  return obj;
}

NodeIndex NodeRef(const Instance& instance, const json& value,
                  const std::string& where) {
  if (!value.is_string()) throw ParseError(0, where + ": expected a node id");
  try {
    return instance.node_index(value.get<std::string>());
  } catch (const UnknownId& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

std::vector<std::string> Tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char c : line) {
    if (c == '(' || c == ')') {
      flush();
      tokens.emplace_back(1, c);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return tokens;
}

bool ParseNumber(const std::string& token, double& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

// "<id> ( <u> <v> )" prefix shared by LINKS and DEMANDS lines.
struct Endpoints {
  std::string id;
  NodeIndex u;
  NodeIndex v;
};

Endpoints ParseEndpoints(const Instance& instance,
                         const std::vector<std::string>& tokens,
                         std::size_t line) {
  if (tokens.size() < 5 || tokens[1] != "(" || tokens[4] != ")") {
    throw ParseError(line, "expected '<id> ( <source> <target> )'");
  }
  Endpoints ep{tokens[0], 0, 0};
  try {
    ep.u = instance.node_index(tokens[2]);
    ep.v = instance.node_index(tokens[3]);
  } catch (const UnknownId& e) {
    throw ParseError(line, e.what());
  }
  return ep;
}

}  // namespace

json InstanceToJson(const Instance& instance) {
  json doc;
  doc["resources"] = instance.resources;
  doc["nodes"] = json::array();
  for (const Node& node : instance.nodes) {
    doc["nodes"].push_back(
        {{"id", node.id}, {"capacity", ResourceObject(instance, node.capacity)}});
  }
  doc["edges"] = json::array();
  for (const Edge& e : instance.edges) {
    doc["edges"].push_back({{"u", instance.nodes[e.u].id},
                            {"v", instance.nodes[e.v].id},
                            {"cost", e.cost}});
  }
  doc["functions"] = json::array();
  for (const NetworkFunction& fn : instance.functions) {
    doc["functions"].push_back(
        {{"id", fn.id}, {"beta", ResourceObject(instance, fn.unit_demand)}});
  }
  doc["flows"] = json::array();
  for (const Flow& f : instance.flows) {
    json flow = {{"id", f.id},
                 {"src", instance.nodes[f.src].id},
                 {"dst", instance.nodes[f.dst].id},
                 {"rate", f.rate}};
    flow["functions"] = json::array();
    for (FunctionIndex fn : f.functions) {
      flow["functions"].push_back(instance.functions[fn].id);
    }
    flow["path"] = json::array();
    for (NodeIndex v : f.path) flow["path"].push_back(instance.nodes[v].id);
    doc["flows"].push_back(std::move(flow));
  }
  return doc;
}

Instance InstanceFromJson(const json& doc, PathMetric metric) {
  Instance instance;
  try {
    for (const json& r : Require(doc, "resources", "instance")) {
      instance.resources.push_back(r.get<std::string>());
    }
    for (const json& node : Require(doc, "nodes", "instance")) {
      Node n;
      n.id = Require(node, "id", "node").get<std::string>();
      n.capacity =
          ResourceVector(instance, Require(node, "capacity", n.id), "node " + n.id);
      instance.nodes.push_back(std::move(n));
    }
    if (doc.contains("edges")) {
      for (const json& edge : doc.at("edges")) {
        Edge e;
        e.u = NodeRef(instance, Require(edge, "u", "edge"), "edge");
        e.v = NodeRef(instance, Require(edge, "v", "edge"), "edge");
        e.cost = edge.value("cost", 1.0);
        instance.edges.push_back(e);
      }
    }
    for (const json& fn : Require(doc, "functions", "instance")) {
      NetworkFunction nf;
      nf.id = Require(fn, "id", "function").get<std::string>();
      nf.unit_demand =
          ResourceVector(instance, Require(fn, "beta", nf.id), "function " + nf.id);
      instance.functions.push_back(std::move(nf));
    }
    for (const json& flow : Require(doc, "flows", "instance")) {
      Flow f;
      f.id = Require(flow, "id", "flow").get<std::string>();
      const std::string where = "flow " + f.id;
      f.src = NodeRef(instance, Require(flow, "src", where), where);
      f.dst = NodeRef(instance, Require(flow, "dst", where), where);
      f.rate = Require(flow, "rate", where).get<double>();
      for (const json& fn : Require(flow, "functions", where)) {
        try {
          f.functions.push_back(instance.function_index(fn.get<std::string>()));
        } catch (const UnknownId& e) {
          throw ValidationError(where + ": " + e.what());
        }
      }
      if (flow.contains("path")) {
        for (const json& v : flow.at("path")) {
          f.path.push_back(NodeRef(instance, v, where));
        }
      }
      instance.flows.push_back(std::move(f));
    }
  } catch (const json::exception& e) {
    throw ParseError(0, e.what());
  }
  ValidateTopology(instance);
  instance = FillMissingPaths(std::move(instance), metric);
  Validate(instance);
  return instance;
}

Instance ParseSndlibTopology(const std::string& text) {
  Instance instance;
  enum class Section { kNone, kNodes, kLinks, kDemands, kSkip };
  Section section = Section::kNone;
  int skip_depth = 0;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = raw.substr(0, raw.find('#'));
    const std::vector<std::string> tokens = Tokenize(line);
    if (tokens.empty()) continue;
    if (section == Section::kSkip) {
      for (const std::string& t : tokens) {
        if (t == "(") ++skip_depth;
        if (t == ")") --skip_depth;
      }
      if (skip_depth <= 0) section = Section::kNone;
      continue;
    }
    if (section == Section::kNone) {
      if (tokens.size() >= 2 && tokens[1] == "(") {
        if (tokens[0] == "NODES") {
          section = Section::kNodes;
        } else if (tokens[0] == "LINKS") {
          section = Section::kLinks;
        } else if (tokens[0] == "DEMANDS") {
          section = Section::kDemands;
        } else {
          section = Section::kSkip;
          skip_depth = 0;
          for (const std::string& t : tokens) {
            if (t == "(") ++skip_depth;
            if (t == ")") --skip_depth;
          }
          if (skip_depth <= 0) section = Section::kNone;
        }
        // A section may be closed on its own opening line: "DEMANDS ( )".
        if (section != Section::kSkip && section != Section::kNone &&
            tokens.size() == 3 && tokens[2] == ")") {
          section = Section::kNone;
        }
        continue;
      }
      if (tokens[0].starts_with("?")) continue;  // "?SNDlib native format" banner
      throw ParseError(line_no, "unexpected content outside a section");
    }
    if (tokens.size() == 1 && tokens[0] == ")") {
      section = Section::kNone;
      continue;
    }
    switch (section) {
      case Section::kNodes: {
        Node node;
        node.id = tokens[0];
        if (tokens[0] == "(" || tokens[0] == ")") {
          throw ParseError(line_no, "node line without an id");
        }
        instance.nodes.push_back(std::move(node));
        break;
      }
      case Section::kLinks: {
        const Endpoints ep = ParseEndpoints(instance, tokens, line_no);
        std::vector<double> numbers;
        for (std::size_t i = 5; i < tokens.size() && tokens[i] != "("; ++i) {
          double value;
          if (!ParseNumber(tokens[i], value)) {
            throw ParseError(line_no, "non-numeric link field '" + tokens[i] + "'");
          }
          numbers.push_back(value);
        }
        // Fields: pre-installed capacity, its cost, routing cost, setup cost.
        Edge e{ep.u, ep.v, numbers.size() >= 3 ? numbers[2] : 1.0};
        if (e.cost < 0.0) throw ParseError(line_no, "negative routing cost");
        instance.edges.push_back(e);
        break;
      }
      case Section::kDemands: {
        const Endpoints ep = ParseEndpoints(instance, tokens, line_no);
        if (tokens.size() < 7) {
          throw ParseError(line_no, "demand needs routing unit and value");
        }
        double unit, value;
        if (!ParseNumber(tokens[5], unit) || !ParseNumber(tokens[6], value)) {
          throw ParseError(line_no, "non-numeric demand field");
        }
        if (value <= 0.0) break;
        Flow f;
        f.id = ep.id;
        f.src = ep.u;
        f.dst = ep.v;
        f.rate = value;
        instance.flows.push_back(std::move(f));
        break;
      }
      default:
        break;
    }
  }
  if (section != Section::kNone) {
    throw ParseError(line_no, "unterminated section");
  }
  try {
    ValidateTopology(instance);
  } catch (const ValidationError& e) {
    throw ParseError(line_no, e.what());
  }
  return instance;
}

Instance ApplyCompanionConfig(Instance instance, const json& config) {
  try {
    instance.resources.clear();
    for (const json& r : Require(config, "resources", "config")) {
      instance.resources.push_back(r.get<std::string>());
    }
    instance.functions.clear();
    for (const json& fn : Require(config, "functions", "config")) {
      NetworkFunction nf;
      nf.id = Require(fn, "id", "function").get<std::string>();
      nf.unit_demand =
          ResourceVector(instance, Require(fn, "beta", nf.id), "function " + nf.id);
      instance.functions.push_back(std::move(nf));
    }
    std::vector<double> default_capacity(instance.num_resources(), 0.0);
    if (config.contains("default_capacity")) {
      default_capacity = ResourceVector(instance, config.at("default_capacity"),
                                        "default_capacity");
    }
    for (Node& node : instance.nodes) node.capacity = default_capacity;
    if (config.contains("capacities")) {
      for (const auto& [nid, caps] : config.at("capacities").items()) {
        NodeIndex v;
        try {
          v = instance.node_index(nid);
        } catch (const UnknownId& e) {
          throw ValidationError(std::string("capacities: ") + e.what());
        }
        instance.nodes[v].capacity = ResourceVector(instance, caps, "node " + nid);
      }
    }
    auto function_list = [&](const json& ids, const std::string& where) {
      std::vector<FunctionIndex> out;
      for (const json& id : ids) {
        try {
          out.push_back(instance.function_index(id.get<std::string>()));
        } catch (const UnknownId& e) {
          throw ValidationError(where + ": " + e.what());
        }
      }
      return out;
    };
    std::vector<FunctionIndex> defaults;
    if (config.contains("default_functions")) {
      defaults = function_list(config.at("default_functions"), "default_functions");
    }
    for (Flow& f : instance.flows) f.functions = defaults;
    if (config.contains("flow_functions")) {
      for (const auto& [fid, ids] : config.at("flow_functions").items()) {
        FlowIndex f;
        try {
          f = instance.flow_index(fid);
        } catch (const UnknownId& e) {
          throw ValidationError(std::string("flow_functions: ") + e.what());
        }
        instance.flows[f].functions = function_list(ids, "flow " + fid);
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(0, e.what());
  }
  return instance;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

namespace {

json ParseJsonText(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const std::size_t line =
        1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw ParseError(line, e.what());
  }
}

}  // namespace

Instance LoadInstance(const std::string& path, InstanceFormat format,
                      PathMetric metric,
                      const std::optional<std::string>& companion_config_path) {
  const std::string text = ReadFile(path);
  if (format == InstanceFormat::kJson) {
    return InstanceFromJson(ParseJsonText(text), metric);
  }
  if (!companion_config_path) {
    throw ValidationError(
        "SNDlib instances need a companion capacity/function config");
  }
  Instance instance = ParseSndlibTopology(text);
  instance = ApplyCompanionConfig(std::move(instance),
                                  ParseJsonText(ReadFile(*companion_config_path)));
  instance = ComputePaths(std::move(instance), metric);
  Validate(instance);
  return instance;
}

void SaveInstanceJson(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(0, "cannot write '" + path + "'");
  out << InstanceToJson(instance).dump(2) << '\n';
}

}  // namespace nfvplace
