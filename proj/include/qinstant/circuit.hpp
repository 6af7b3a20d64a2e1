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

#include "qinstant/statevec.hpp"

#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qinstant {

template <typename Real>
struct BasicOperation {
  BasicGate<Real> gate;
  std::vector<int> targets;
};

/// Ordered sequence of one- and two-qubit unitaries on `num_qubits` qubits.
template <typename Real>
class BasicCircuit {
 public:
  using Operation = BasicOperation<Real>;

  explicit BasicCircuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("circuit needs at least one qubit");
  }

  BasicCircuit& add(BasicGate<Real> gate, std::vector<int> targets) {
    if (int(targets.size()) != gate.arity()) {
      throw std::invalid_argument("gate of arity " + std::to_string(gate.arity()) + " given " +
                                  std::to_string(targets.size()) + " targets");
    }
    detail::check_targets(targets, num_qubits_);
    ops_.push_back({std::move(gate), std::move(targets)});
    return *this;
  }

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }
  const std::vector<Operation>& operations() const { return ops_; }

 private:
  int num_qubits_;
  std::vector<Operation> ops_;
};

using Circuit = BasicCircuit<double>;
using Operation = BasicOperation<double>;

/// Applies every gate of `circuit` in order, with gate targets shifted by
/// `offset` inside the larger register.
template <typename Real>
BasicStateVector<Real> apply_circuit(const BasicCircuit<Real>& circuit, BasicStateVector<Real> state, int offset = 0) {
  if (offset < 0 || offset + circuit.num_qubits() > state.num_qubits()) {
    throw std::invalid_argument("circuit on " + std::to_string(circuit.num_qubits()) + " qubits at offset " +
                                std::to_string(offset) + " does not fit a " + std::to_string(state.num_qubits()) +
                                "-qubit state");
  }
  std::vector<int> shifted;
  for (const auto& op : circuit.operations()) {
    shifted.assign(op.targets.begin(), op.targets.end());
    for (int& t : shifted) t += offset;
    state = apply_gate(state, op.gate, std::span<const int>(shifted));
  }
  return state;
}

/// Reversed gate order, each gate conjugate-transposed.
template <typename Real>
BasicCircuit<Real> inverse(const BasicCircuit<Real>& circuit) {
  BasicCircuit<Real> out(circuit.num_qubits());
  const auto& ops = circuit.operations();
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) out.add(it->gate.adjoint(), it->targets);
  return out;
}

/// `depth` layers, each a Haar-random single-qubit gate on every qubit
/// followed (for two or more qubits) by one CNOT on a uniformly random ordered
/// pair of distinct qubits.
template <typename Real = double, typename RandomEngine>
BasicCircuit<Real> random_circuit(int num_qubits, int depth, RandomEngine& rng) {
  if (depth < 0) throw std::invalid_argument("circuit depth must be non-negative");
  BasicCircuit<Real> c(num_qubits);
  for (int layer = 0; layer < depth; ++layer) {
    for (int q = 0; q < num_qubits; ++q) c.add(BasicGate<Real>(sample_haar_unitary<Real>(2, rng)), {q});
    if (num_qubits >= 2) {
      std::uniform_int_distribution<int> first(0, num_qubits - 1);
      std::uniform_int_distribution<int> second(0, num_qubits - 2);
      const int control = first(rng);
      int target = second(rng);
      if (target >= control) ++target;
      c.add(gates::cnot<Real>(), {control, target});
    }
  }
  return c;
}

/// Full 2^n x 2^n unitary of a circuit. Only sensible for small n; used by
/// tests and analysis code.
template <typename Real>
ComplexMatrix<Real> circuit_unitary(const BasicCircuit<Real>& circuit) {
  const Eigen::Index dim = Eigen::Index(1) << circuit.num_qubits();
  ComplexMatrix<Real> u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto out = apply_circuit(circuit, BasicStateVector<Real>::basis(circuit.num_qubits(), std::uint64_t(col)));
    u.col(col) = out.amplitudes();
  }
  return u;
}

}  // namespace qinstant
