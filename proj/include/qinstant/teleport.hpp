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

// Teleportation-based instantaneous computation.
//
// Register layout for a protocol on n qubits, low indices first:
//
//   [ qubits 1 : input      | qubits 2 : pair halves | qubits 3 : computed ]
//     0 .. n-1                n .. 2n-1                2n .. 3n-1
//
// The offline resource holds only the last two blocks (indices 0..2n-1).
// Pair i is (qubit 2_i, qubit 3_i); a Bell measurement acts on (1_i, 2_i).

#include "qinstant/circuit.hpp"
#include "qinstant/rng.hpp"
#include "qinstant/statevec.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qinstant {

/// Outcome of one Bell measurement: (0,0) = Phi+, (1,0) = Psi+,
/// (0,1) = Phi-, (1,1) = Psi-.
struct BellBits {
  int x = 0;
  int z = 0;

  bool trivial() const { return x == 0 && z == 0; }
  /// Column of bell_basis() for this outcome: x + 2z.
  int index() const { return x + 2 * z; }
  static BellBits from_index(int k) { return {k & 1, (k >> 1) & 1}; }

  auto operator<=>(const BellBits&) const = default;
};

class BsmOutcome {
 public:
  BsmOutcome() = default;
  explicit BsmOutcome(std::vector<BellBits> bits) : bits_(std::move(bits)) {}

  /// Decodes a base-4 outcome index; digit i is the outcome of pair i.
  static BsmOutcome from_index(int n, std::uint64_t index);
  static BsmOutcome trivial(int n) { return BsmOutcome(std::vector<BellBits>(std::size_t(n))); }

  std::size_t size() const { return bits_.size(); }
  const BellBits& operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<BellBits>& bits() const { return bits_; }

  bool all_trivial() const;
  std::uint64_t index() const;
  /// "00.10" style rendering, x then z per pair.
  std::string to_string() const;

  bool operator==(const BsmOutcome&) const = default;

 private:
  std::vector<BellBits> bits_;
};

/// Bell basis on two qubits as columns {Phi+, Psi+, Phi-, Psi-}. Local index
/// bit 0 is the first qubit of the pair, bit 1 the second.
const Matrix& bell_basis();

/// Single-qubit correction Z^z X^x (X applied first) that undoes the Pauli
/// frame left on the receiving qubit by outcome `bits`.
Matrix pauli_correction(BellBits bits);

/// Applies the per-qubit corrections for `outcome` to qubits
/// offset .. offset + outcome.size() - 1.
StateVector apply_pauli_corrections(const StateVector& state, const BsmOutcome& outcome, int offset = 0);

/// n copies of Phi+ with pair i on qubits (i, n + i).
StateVector make_bell_pairs(int n, int max_qubits = kDefaultMaxQubits);

struct OfflineResource {
  int n = 0;
  /// 2n qubits: qubits-2 block then qubits-3 block.
  StateVector joint_state;
  /// The computation already applied to the qubits-3 block.
  Circuit circuit;
};

/// Runs `circuit` on the qubits-3 halves of fresh Bell pairs.
OfflineResource prepare_offline(const Circuit& circuit, int max_qubits = kDefaultMaxQubits);

struct BsmResult {
  BsmOutcome outcome;
  /// Probability of the whole outcome string.
  double probability = 0;
  /// Renormalized n-qubit state of the qubits-3 block.
  StateVector target_state;
};

/// Bell-measures every pair (1_i, 2_i) of a 3n-qubit register, discards the
/// measured qubits, and returns the qubits-3 block. A `forced` outcome
/// post-selects that branch instead of sampling.
BsmResult bell_measure_pairs(const StateVector& joint, Rng& rng, const std::optional<BsmOutcome>& forced = std::nullopt);

/// Exact probability of every outcome string, indexed by BsmOutcome::index().
std::vector<double> bsm_outcome_probabilities(const StateVector& joint);

struct InstantRunResult {
  BsmOutcome outcome;
  bool success = false;
  /// Collapsed qubits-3 block, present whether or not the run succeeded.
  StateVector output_state;
  bool residual_needs_correction = true;
};

/// Attaches the late input to the resource and Bell-measures. Succeeds iff
/// every pair lands on Phi+, in which case the output is U|input>.
InstantRunResult run_instantaneous(const OfflineResource& resource, const StateVector& input_state, Rng& rng,
                                   const std::optional<BsmOutcome>& forced = std::nullopt);

struct CorrectedRun {
  StateVector output;
  /// Full executions of the circuit beyond the offline one: the inverse and
  /// the re-run.
  int extra_circuit_executions = 2;
};

/// Undo-correct-redo: applies inverse(circuit), the Pauli corrections for
/// the measured outcome, then circuit again.
CorrectedRun run_with_corrections(const InstantRunResult& result, const Circuit& circuit);

/// Check-measurement in an orthonormal basis whose first element is the
/// correct output. Outcome O is that first element.
class CheckMeasurement {
 public:
  struct Result {
    bool is_O = false;
    /// Exact probability of O, equal to fidelity(output, correct).
    double probability_O = 0;
  };

  explicit CheckMeasurement(StateVector correct);

  Result operator()(const StateVector& output, Rng& rng) const;

  const StateVector& correct() const { return correct_; }
  /// Columns are the measurement basis; column 0 is the correct state.
  const Matrix& basis() const { return basis_; }

 private:
  StateVector correct_;
  Matrix basis_;
};

CheckMeasurement::Result check_measurement(const StateVector& output, const StateVector& correct, Rng& rng);

}  // namespace qinstant
