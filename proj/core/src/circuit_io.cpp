// Copyright 2026 The qnom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qnom/error.hpp"
#include "qnom/pqc.hpp"

namespace qnom {

using nlohmann::json;

std::string circuit_to_json(const Circuit& c, const ParamVector& theta) {
  json j;
  j["n_qubits"] = c.n_qubits;
  j["n_params"] = c.n_params;
  j["cost_edges"] = json::array();
  for (auto [u, v] : c.cost_edges) j["cost_edges"].push_back({u, v});
  j["gates"] = json::array();
  for (const auto& g : c.gates) {
    j["gates"].push_back({{"kind", to_string(g.kind)},
                          {"qubits", g.qubits},
                          {"param_index", g.param_index},
                          {"scale", g.scale}});
  }
  j["params"] = theta;
  return j.dump(2);
}

std::pair<Circuit, ParamVector> circuit_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("circuit file: ") + e.what());
  }
  Circuit c;
  ParamVector theta;
  try {
    c.n_qubits = j.at("n_qubits").get<int>();
    c.n_params = j.at("n_params").get<int>();
    if (j.contains("cost_edges")) {
      for (const auto& e : j["cost_edges"]) c.cost_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
    for (const auto& jg : j.at("gates")) {
      Gate g;
      g.kind = parse_gate_kind(jg.at("kind").get<std::string>());
      g.qubits = jg.at("qubits").get<std::vector<int>>();
      g.param_index = jg.value("param_index", -1);
      g.scale = jg.value("scale", 1.0);
      c.gates.push_back(std::move(g));
    }
    theta = j.value("params", ParamVector(c.n_params, 0.0));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("circuit file: ") + e.what());
  }
  c.validate();
  if (static_cast<int>(theta.size()) != c.n_params) {
    throw InvalidArgument("circuit file: params length != n_params");
  }
  return {std::move(c), std::move(theta)};
}

void save_circuit(const std::string& path, const Circuit& c, const ParamVector& theta) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("save_circuit: cannot open " + path);
  out << circuit_to_json(c, theta) << '\n';
}

std::pair<Circuit, ParamVector> load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("load_circuit: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return circuit_from_json(ss.str());
}

}  // namespace qnom
