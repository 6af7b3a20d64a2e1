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

#include "qinstant/teleport.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qinstant {

BsmOutcome BsmOutcome::from_index(int n, std::uint64_t index) {
  std::vector<BellBits> bits(static_cast<std::size_t>(n));
  for (auto& b : bits) {
    b = BellBits::from_index(int(index & 3u));
    index >>= 2;
  }
  if (index != 0) throw std::invalid_argument("outcome index out of range for " + std::to_string(n) + " pairs");
  return BsmOutcome(std::move(bits));
}

bool BsmOutcome::all_trivial() const {
  return std::all_of(bits_.begin(), bits_.end(), [](const BellBits& b) { return b.trivial(); });
}

std::uint64_t BsmOutcome::index() const {
  std::uint64_t idx = 0;
  for (std::size_t i = bits_.size(); i-- > 0;) idx = idx * 4 + std::uint64_t(bits_[i].index());
  return idx;
}

std::string BsmOutcome::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (i) s += '.';
    s += char('0' + bits_[i].x);
    s += char('0' + bits_[i].z);
  }
  return s;
}

const Matrix& bell_basis() {
  static const Matrix basis = [] {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix b(4, 4);
    // rows: local index q1 + 2*q2; columns: Phi+, Psi+, Phi-, Psi-
    b << s, 0, s, 0,
         0, s, 0, -s,
         0, s, 0, s,
         s, 0, -s, 0;
    return b;
  }();
  return basis;
}

Matrix pauli_correction(BellBits bits) {
  Matrix m = Matrix::Identity(2, 2);
  if (bits.x) m = gates::pauli_x().matrix() * m;
  if (bits.z) m = gates::pauli_z().matrix() * m;
  return m;
}

StateVector apply_pauli_corrections(const StateVector& state, const BsmOutcome& outcome, int offset) {
  StateVector out = state;
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    if (outcome[i].trivial()) continue;
    const int target = offset + int(i);
    out = apply_matrix(out, pauli_correction(outcome[i]), std::span<const int>(&target, 1));
  }
  return out;
}

StateVector make_bell_pairs(int n, int max_qubits) {
  if (n < 1) throw std::invalid_argument("number of pairs must be at least 1");
  detail::check_qubit_count(2 * n, max_qubits);
  const std::uint64_t dim_half = std::uint64_t{1} << n;
  Vector amps = Vector::Zero(Eigen::Index(dim_half * dim_half));
  const double a = 1.0 / std::sqrt(double(dim_half));
  for (std::uint64_t k = 0; k < dim_half; ++k) amps(Eigen::Index(k | (k << n))) = a;
  return StateVector(std::move(amps), max_qubits);
}

OfflineResource prepare_offline(const Circuit& circuit, int max_qubits) {
  const int n = circuit.num_qubits();
  StateVector joint = apply_circuit(circuit, make_bell_pairs(n, max_qubits), n);
  return {n, std::move(joint), circuit};
}

namespace {

int protocol_size(const StateVector& joint) {
  if (joint.num_qubits() % 3 != 0) {
    throw std::invalid_argument("joint register of " + std::to_string(joint.num_qubits()) +
                                " qubits is not three equal blocks");
  }
  return joint.num_qubits() / 3;
}

// Product of the Bell vectors named by `outcome`, laid out for targets
// {1_0, 2_0, 1_1, 2_1, ...}.
Vector bell_product(const BsmOutcome& outcome) {
  Vector v = Vector::Ones(1);
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    const Vector col = bell_basis().col(outcome[i].index());
    Vector next(v.size() * 4);
    for (Eigen::Index hi = 0; hi < 4; ++hi) next.segment(hi * v.size(), v.size()) = v * col(hi);
    v = std::move(next);
  }
  return v;
}

std::vector<int> pair_targets(int n) {
  std::vector<int> t;
  for (int i = 0; i < n; ++i) {
    t.push_back(i);
    t.push_back(n + i);
  }
  return t;
}

}  // namespace

BsmResult bell_measure_pairs(const StateVector& joint, Rng& rng, const std::optional<BsmOutcome>& forced) {
  const int n = protocol_size(joint);
  if (forced && int(forced->size()) != n) {
    throw std::invalid_argument("forced outcome has " + std::to_string(forced->size()) + " pairs, expected " +
                                std::to_string(n));
  }
  std::vector<BellBits> bits;
  double probability = 1.0;
  StateVector current = joint;
  // After each pair is measured and discarded the layout stays
  // [qubits 1 | qubits 2 | qubits 3] with one fewer pair, so the next pair is
  // always (0, remaining).
  for (int remaining = n; remaining > 0; --remaining) {
    const int targets[2] = {0, remaining};
    const detail::SubsystemSplit split(targets, current.num_qubits());
    const Matrix overlaps = detail::gather<double>(current.amplitudes(), split) * bell_basis().conjugate();
    std::array<double, 4> probs{};
    for (int k = 0; k < 4; ++k) probs[std::size_t(k)] = overlaps.col(k).squaredNorm();

    std::size_t k = 0;
    if (forced) {
      k = std::size_t((*forced)[bits.size()].index());
      if (!(probs[k] > 0.0)) throw std::domain_error("forced Bell outcome has zero probability");
    } else {
      k = detail::sample_index<double>(probs, rng);
    }
    probability *= probs[k];
    bits.push_back(BellBits::from_index(int(k)));
    Vector rest = overlaps.col(Eigen::Index(k)) / std::sqrt(probs[k]);
    current = StateVector(std::move(rest), current.num_qubits() - 2, StateVector::Unchecked{});
  }
  return {BsmOutcome(std::move(bits)), probability, std::move(current)};
}

std::vector<double> bsm_outcome_probabilities(const StateVector& joint) {
  const int n = protocol_size(joint);
  const auto targets = pair_targets(n);
  const std::uint64_t count = std::uint64_t{1} << (2 * n);
  std::vector<double> probs(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    probs[idx] = project_and_discard(joint, std::span<const int>(targets), bell_product(BsmOutcome::from_index(n, idx)))
                     .probability;
  }
  return probs;
}

InstantRunResult run_instantaneous(const OfflineResource& resource, const StateVector& input_state, Rng& rng,
                                   const std::optional<BsmOutcome>& forced) {
  if (input_state.num_qubits() != resource.n) {
    throw std::invalid_argument("input has " + std::to_string(input_state.num_qubits()) + " qubits, resource expects " +
                                std::to_string(resource.n));
  }
  const StateVector joint = tensor_product(input_state, resource.joint_state, 3 * resource.n);
  BsmResult bsm = bell_measure_pairs(joint, rng, forced);
  const bool success = bsm.outcome.all_trivial();
  return {std::move(bsm.outcome), success, std::move(bsm.target_state), !success};
}

CorrectedRun run_with_corrections(const InstantRunResult& result, const Circuit& circuit) {
  if (int(result.outcome.size()) != circuit.num_qubits() || result.output_state.num_qubits() != circuit.num_qubits()) {
    throw std::invalid_argument("outcome of " + std::to_string(result.outcome.size()) +
                                " pairs does not match a circuit on " + std::to_string(circuit.num_qubits()) +
                                " qubits");
  }
  StateVector state = apply_circuit(inverse(circuit), result.output_state);
  state = apply_pauli_corrections(state, result.outcome);
  state = apply_circuit(circuit, std::move(state));
  return {std::move(state), 2};
}

CheckMeasurement::CheckMeasurement(StateVector correct)
    : correct_(std::move(correct)), basis_(basis_with_first<double>(correct_.amplitudes())) {}

CheckMeasurement::Result CheckMeasurement::operator()(const StateVector& output, Rng& rng) const {
  if (output.num_qubits() != correct_.num_qubits()) {
    throw std::invalid_argument("check-measurement dimension mismatch");
  }
  const Vector overlaps = basis_.adjoint() * output.amplitudes();
  std::vector<double> probs(std::size_t(overlaps.size()));
  for (Eigen::Index k = 0; k < overlaps.size(); ++k) probs[std::size_t(k)] = std::norm(overlaps(k));
  const std::size_t k = detail::sample_index<double>(probs, rng);
  return {k == 0, fidelity(output, correct_)};
}

CheckMeasurement::Result check_measurement(const StateVector& output, const StateVector& correct, Rng& rng) {
  return CheckMeasurement(correct)(output, rng);
}

}  // namespace qinstant
