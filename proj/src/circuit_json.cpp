// Copyright 2026 The qinstant Authors
//
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

#include "qinstant/circuit_json.hpp"

#include <fstream>

namespace qinstant {

using nlohmann::json;

json circuit_to_json(const Circuit& circuit) {
  json gates = json::array();
  for (const auto& op : circuit.operations()) {
    json g;
    if (!op.gate.name().empty() && gates::by_name(op.gate.name())) {
      g["name"] = op.gate.name();
    } else {
      json m = json::array();
      const auto& mat = op.gate.matrix();
      for (Eigen::Index r = 0; r < mat.rows(); ++r) {
        for (Eigen::Index c = 0; c < mat.cols(); ++c) m.push_back({mat(r, c).real(), mat(r, c).imag()});
      }
      g["matrix"] = std::move(m);
    }
    g["targets"] = op.targets;
    gates.push_back(std::move(g));
  }
  return json{{"num_qubits", circuit.num_qubits()}, {"gates", std::move(gates)}};
}

namespace {

Gate gate_from_json(const json& g, std::size_t index) {
  const std::string where = "gate " + std::to_string(index) + ": ";
  if (g.contains("name")) {
    const auto name = g.at("name").get<std::string>();
    auto gate = gates::by_name(name);
    if (!gate) throw CircuitFormatError(where + "unknown gate name '" + name + "'");
    return *gate;
  }
  if (!g.contains("matrix")) throw CircuitFormatError(where + "needs either 'name' or 'matrix'");
  const auto& m = g.at("matrix");
  if (!m.is_array() || (m.size() != 4 && m.size() != 16)) {
    throw CircuitFormatError(where + "'matrix' must hold 4 or 16 [re, im] pairs");
  }
  const Eigen::Index dim = m.size() == 4 ? 2 : 4;
  Matrix mat(dim, dim);
  for (std::size_t k = 0; k < m.size(); ++k) {
    const auto& entry = m[k];
    if (!entry.is_array() || entry.size() != 2) throw CircuitFormatError(where + "matrix entries must be [re, im]");
    mat(Eigen::Index(k) / dim, Eigen::Index(k) % dim) = {entry[0].get<double>(), entry[1].get<double>()};
  }
  try {
    return Gate(std::move(mat));
  } catch (const std::invalid_argument& e) {
    throw CircuitFormatError(where + e.what());
  }
}

}  // namespace

Circuit circuit_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw CircuitFormatError("circuit document must be an object");
    Circuit circuit(doc.at("num_qubits").get<int>());
    const auto& gates = doc.at("gates");
    if (!gates.is_array()) throw CircuitFormatError("'gates' must be an array");
    for (std::size_t i = 0; i < gates.size(); ++i) {
      auto gate = gate_from_json(gates[i], i);
      auto targets = gates[i].at("targets").get<std::vector<int>>();
      try {
        circuit.add(std::move(gate), std::move(targets));
      } catch (const std::invalid_argument& e) {
        throw CircuitFormatError("gate " + std::to_string(i) + ": " + e.what());
      }
    }
    return circuit;
  } catch (const json::exception& e) {
    throw CircuitFormatError(std::string("malformed circuit document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw CircuitFormatError(e.what());
  }
}

Circuit load_circuit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CircuitFormatError("cannot open circuit file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw CircuitFormatError(path.string() + ": " + e.what());
  }
  return circuit_from_json(doc);
}

void save_circuit(const Circuit& circuit, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << circuit_to_json(circuit).dump(2) << '\n';
}

}  // namespace qinstant
