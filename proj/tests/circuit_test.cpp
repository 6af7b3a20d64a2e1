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

#include "qinstant/circuit.hpp"

#include "gtest/gtest.h"

#include "qinstant/circuit_json.hpp"
#include "qinstant/rng.hpp"
#include "test_util.hpp"

#include <filesystem>
#include <fstream>

using namespace qinstant;
using qinstant::testing::kTol;

namespace {

Circuit bell_circuit() {
  Circuit c(2);
  c.add(gates::hadamard(), {0}).add(gates::cnot(), {0, 1});
  return c;
}

bool same_circuit(const Circuit& a, const Circuit& b) {
  if (a.num_qubits() != b.num_qubits() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.operations()[i];
    const auto& y = b.operations()[i];
    if (x.targets != y.targets) return false;
    if ((x.gate.matrix() - y.gate.matrix()).cwiseAbs().maxCoeff() > kTol) return false;
  }
  return true;
}

}  // namespace

TEST(Circuit, AddValidatesTargets) {
  Circuit c(2);
  EXPECT_THROW(c.add(gates::pauli_x(), {2}), std::invalid_argument);
  EXPECT_THROW(c.add(gates::cnot(), {0}), std::invalid_argument);
  EXPECT_THROW(c.add(gates::cnot(), {1, 1}), std::invalid_argument);
  EXPECT_THROW(Circuit(0), std::invalid_argument);
}

TEST(ApplyCircuit, EmptyIsIdentity) {
  Rng rng(1);
  const auto s = sample_haar_state(3, rng);
  EXPECT_NEAR(fidelity(apply_circuit(Circuit(3), s), s), 1.0, kTol);
}

TEST(ApplyCircuit, BellConstruction) {
  const auto s = apply_circuit(bell_circuit(), StateVector::zero(2));
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(s[0] - r), 0.0, kTol);
  EXPECT_NEAR(std::abs(s[3] - r), 0.0, kTol);
  EXPECT_NEAR(std::abs(s[1]) + std::abs(s[2]), 0.0, kTol);
}

TEST(ApplyCircuit, OffsetShiftsTargets) {
  Circuit c(1);
  c.add(gates::pauli_x(), {0});
  const auto s = apply_circuit(c, StateVector::zero(3), 2);
  EXPECT_NEAR(std::abs(s[4]), 1.0, kTol);
  EXPECT_THROW(apply_circuit(c, StateVector::zero(3), 3), std::invalid_argument);
  EXPECT_THROW(apply_circuit(Circuit(4), StateVector::zero(3)), std::invalid_argument);
}

TEST(Inverse, ReversesAndDaggers) {
  Circuit x(1);
  x.add(gates::pauli_x(), {0});
  EXPECT_TRUE(same_circuit(inverse(x), x));
  EXPECT_EQ(inverse(x).operations()[0].gate.name(), "X");

  const auto inv = inverse(bell_circuit());
  Circuit expected(2);
  expected.add(gates::cnot(), {0, 1}).add(gates::hadamard(), {0});
  EXPECT_TRUE(same_circuit(inv, expected));
  EXPECT_EQ(inv.operations()[0].gate.name(), "CNOT");
  EXPECT_EQ(inv.operations()[1].gate.name(), "H");

  Circuit s(1);
  s.add(gates::phase_s(), {0});
  EXPECT_TRUE(inverse(s).operations()[0].gate.name().empty());
  EXPECT_NEAR(std::abs(inverse(s).operations()[0].gate.matrix()(1, 1) - Complex(0, -1)), 0.0, kTol);
}

TEST(Inverse, InvolutionAndUndo) {
  Rng rng(42);
  for (int n = 1; n <= 4; ++n) {
    const auto c = random_circuit(n, 5, rng);
    const auto twice = inverse(inverse(c));
    for (int trial = 0; trial < 50; ++trial) {
      const auto s = sample_haar_state(n, rng);
      const auto out = apply_circuit(c, s);
      EXPECT_NEAR(out.squared_norm(), 1.0, kTol);
      EXPECT_GE(fidelity(apply_circuit(twice, s), out), 1.0 - kTol);
      EXPECT_GE(fidelity(apply_circuit(inverse(c), out), s), 1.0 - kTol);
    }
  }
}

TEST(RandomCircuit, ShapeAndDeterminism) {
  Rng rng(3);
  EXPECT_TRUE(random_circuit(3, 0, rng).empty());
  EXPECT_THROW(random_circuit(3, -1, rng), std::invalid_argument);
  EXPECT_EQ(random_circuit(3, 4, rng).size(), 4u * 4u);
  EXPECT_EQ(random_circuit(1, 4, rng).size(), 4u);

  Rng a(99);
  Rng b(99);
  EXPECT_TRUE(same_circuit(random_circuit(3, 6, a), random_circuit(3, 6, b)));
  const auto deep = random_circuit(4, 8, a);
  for (const auto& op : deep.operations()) {
    EXPECT_TRUE(detail::is_unitary<double>(op.gate.matrix()));
    if (op.gate.arity() == 2) EXPECT_NE(op.targets[0], op.targets[1]);
  }
}

TEST(CircuitUnitary, MatchesCircuitAction) {
  Rng rng(12);
  const auto c = random_circuit(3, 3, rng);
  const Matrix u = circuit_unitary(c);
  EXPECT_TRUE(detail::is_unitary<double>(u));
  const auto s = sample_haar_state(3, rng);
  EXPECT_NEAR((u * s.amplitudes() - apply_circuit(c, s).amplitudes()).norm(), 0.0, kTol);
}

TEST(CircuitJson, NamedAndRawGatesRoundTrip) {
  Rng rng(5);
  Circuit c(3);
  c.add(gates::hadamard(), {0}).add(gates::cnot(), {0, 2}).add(gates::phase_t(), {1});
  c.add(Gate(sample_haar_unitary(2, rng)), {2}).add(Gate(sample_haar_unitary(4, rng)), {2, 1});
  const auto doc = circuit_to_json(c);
  EXPECT_EQ(doc["gates"][0]["name"], "H");
  EXPECT_EQ(doc["gates"][1]["name"], "CNOT");
  EXPECT_TRUE(doc["gates"][3].contains("matrix"));
  EXPECT_EQ(doc["gates"][4]["matrix"].size(), 16u);
  EXPECT_TRUE(same_circuit(circuit_from_json(doc), c));
}

TEST(CircuitJson, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "qinstant_circuit_test.json";
  Rng rng(6);
  const auto c = random_circuit(2, 3, rng);
  save_circuit(c, path);
  EXPECT_TRUE(same_circuit(load_circuit(path), c));
  std::filesystem::remove(path);
}

TEST(CircuitJson, RejectsMalformedDocuments) {
  using nlohmann::json;
  EXPECT_THROW(circuit_from_json(json::parse(R"({"gates": []})")), CircuitFormatError);
  EXPECT_THROW(circuit_from_json(json::parse(R"({"num_qubits": 1, "gates": [{"name": "Q", "targets": [0]}]})")),
               CircuitFormatError);
  EXPECT_THROW(circuit_from_json(json::parse(R"({"num_qubits": 1, "gates": [{"name": "X", "targets": [3]}]})")),
               CircuitFormatError);
  EXPECT_THROW(
      circuit_from_json(json::parse(R"({"num_qubits": 1, "gates": [{"matrix": [[1,0],[1,0],[0,0],[1,0]], "targets": [0]}]})")),
      CircuitFormatError);
  EXPECT_THROW(circuit_from_json(json::parse(R"({"num_qubits": 0, "gates": []})")), CircuitFormatError);
  EXPECT_THROW(load_circuit("/nonexistent/qinstant.json"), CircuitFormatError);
}
