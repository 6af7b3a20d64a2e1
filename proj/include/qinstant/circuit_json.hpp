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

#pragma once

// JSON form of a circuit:
//
//   {"num_qubits": 2,
//    "gates": [{"name": "H", "targets": [0]},
//              {"name": "CNOT", "targets": [0, 1]},
//              {"matrix": [[re, im], [re, im], [re, im], [re, im]], "targets": [1]}]}
//
// Named gates are H, X, Y, Z, S, T and CNOT (control first). Any other gate
// is written as a raw matrix: row-major [re, im] pairs.

#include "qinstant/circuit.hpp"

#include "json.hpp"

#include <filesystem>
#include <stdexcept>

namespace qinstant {

/// Raised for malformed circuit documents.
class CircuitFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& doc);

Circuit load_circuit(const std::filesystem::path& path);
void save_circuit(const Circuit& circuit, const std::filesystem::path& path);

}  // namespace qinstant
