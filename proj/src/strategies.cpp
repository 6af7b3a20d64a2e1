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

#include "qinstant/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qinstant {

void ScoreParams::validate() const {
  if (!(reward_P > 0.0)) throw std::invalid_argument("reward_P must be positive");
  if (!(penalty_N >= 0.0)) throw std::invalid_argument("penalty_N must be non-negative");
  if (!(cost_C >= 0.0)) throw std::invalid_argument("cost_C must be non-negative");
}

Strategy Strategy::approximate(double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw std::invalid_argument("approximate fidelity must lie in [0, 1]");
  }
  return {StrategyKind::Approximate, fidelity};
}

std::string Strategy::name() const {
  switch (kind) {
    case StrategyKind::NoAnswer: return "no_answer";
    case StrategyKind::RandomGuess: return "random";
    case StrategyKind::Instantaneous: return "instant";
    case StrategyKind::ClassicalBasis: return "classical";
    case StrategyKind::RemoteStatePrep: return "rsp";
    case StrategyKind::Approximate: return "approx";
  }
  return "unknown";
}

Strategy Strategy::parse(std::string_view text) {
  if (text == "no_answer") return {StrategyKind::NoAnswer};
  if (text == "random") return {StrategyKind::RandomGuess};
  if (text == "instant") return {StrategyKind::Instantaneous};
  if (text == "classical") return {StrategyKind::ClassicalBasis};
  if (text == "rsp") return {StrategyKind::RemoteStatePrep};
  if (text == "approx") return approximate(1.0);
  if (text.starts_with("approx:")) {
    const std::string value(text.substr(7));
    std::size_t used = 0;
    double f = 0;
    try {
      f = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw std::invalid_argument("bad fidelity in strategy '" + std::string(text) + "'");
    return approximate(f);
  }
  throw std::invalid_argument("unknown strategy '" + std::string(text) + "'");
}

bool Strategy::consumes_resource() const {
  return kind == StrategyKind::Instantaneous || kind == StrategyKind::ClassicalBasis ||
         kind == StrategyKind::RemoteStatePrep;
}

double expected_score(const Strategy& strategy, int n, const ScoreParams& params) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const double P = params.reward_P;
  const double N = params.penalty_N;
  const double half_n = std::ldexp(1.0, -n);
  const double quarter_n = std::ldexp(1.0, -2 * n);
  switch (strategy.kind) {
    case StrategyKind::NoAnswer: return 0.0;
    case StrategyKind::RandomGuess: return P * half_n - N * (1.0 - half_n);
    case StrategyKind::Instantaneous: return P * quarter_n;
    case StrategyKind::ClassicalBasis: return P * half_n;
    case StrategyKind::RemoteStatePrep: return P * half_n;
    case StrategyKind::Approximate: return P * strategy.fidelity - N * (1.0 - strategy.fidelity);
  }
  return 0.0;
}

StrategyOutput classical_basis_strategy(int n, const Circuit& circuit, std::uint64_t actual_input_index,
                                        std::uint64_t precomputed_guess_index, Rng& rng) {
  if (circuit.num_qubits() != n) throw std::invalid_argument("circuit size does not match n");
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (actual_input_index >= dim || precomputed_guess_index >= dim) {
    throw std::invalid_argument("basis index out of range");
  }
  const StateVector input = StateVector::basis(n, actual_input_index);
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  const Matrix computational = Matrix::Identity(Eigen::Index(dim), Eigen::Index(dim));
  const auto m = measure_in_basis(input, std::span<const int>(all), computational, rng);
  if (m.outcome != precomputed_guess_index) return {false, std::nullopt};
  return {true, apply_circuit(circuit, StateVector::basis(n, precomputed_guess_index))};
}

StrategyOutput rsp_strategy(const OfflineResource& resource, const StateVector& known_input, Rng& rng) {
  const int n = resource.n;
  if (known_input.num_qubits() != n) throw std::invalid_argument("known input size does not match n");
  const Matrix basis = basis_with_first<double>(known_input.amplitudes().conjugate());
  std::vector<int> pair_block(static_cast<std::size_t>(n));
  std::iota(pair_block.begin(), pair_block.end(), 0);
  const auto m = measure_in_basis(resource.joint_state, std::span<const int>(pair_block), basis, rng);
  if (m.outcome != 0) return {false, std::nullopt};
  auto projected = project_and_discard(m.collapsed, std::span<const int>(pair_block), Vector(basis.col(0)));
  return {true, std::move(projected.remainder)};
}

StrategyOutput rsp_strategy(int n, const Circuit& circuit, const StateVector& known_input, Rng& rng) {
  if (circuit.num_qubits() != n) throw std::invalid_argument("circuit size does not match n");
  return rsp_strategy(prepare_offline(circuit), known_input, rng);
}

StateVector approximate_output(const CheckMeasurement& check, double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw std::invalid_argument("fidelity must lie in [0, 1]");
  const Matrix& basis = check.basis();
  Vector v = std::sqrt(fidelity) * basis.col(0) + std::sqrt(1.0 - fidelity) * basis.col(1);
  return StateVector::normalized(std::move(v));
}

GameReport run_game(const Strategy& strategy, int n, const Circuit& circuit, const ScoreParams& params,
                    std::int64_t trials, std::uint64_t seed) {
  params.validate();
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (circuit.num_qubits() != n) {
    throw std::invalid_argument("circuit has " + std::to_string(circuit.num_qubits()) + " qubits but n = " +
                                std::to_string(n));
  }

  std::optional<OfflineResource> resource;
  if (strategy.kind == StrategyKind::Instantaneous || strategy.kind == StrategyKind::RemoteStatePrep) {
    resource = prepare_offline(circuit);
  }
  const std::uint64_t dim = std::uint64_t{1} << n;

  std::int64_t answered = 0;
  std::int64_t correct = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    if (strategy.kind == StrategyKind::NoAnswer) break;
    Rng rng = derive_stream(seed, std::uint64_t(t));

    std::optional<StateVector> correct_output;
    std::optional<StateVector> answer;
    switch (strategy.kind) {
      case StrategyKind::NoAnswer:
        break;
      case StrategyKind::RandomGuess: {
        const auto input = sample_haar_state(n, rng);
        correct_output = apply_circuit(circuit, input);
        answer = sample_haar_state(n, rng);
        break;
      }
      case StrategyKind::Instantaneous: {
        const auto input = sample_haar_state(n, rng);
        correct_output = apply_circuit(circuit, input);
        auto run = run_instantaneous(*resource, input, rng);
        if (run.success) answer = std::move(run.output_state);
        break;
      }
      case StrategyKind::ClassicalBasis: {
        std::uniform_int_distribution<std::uint64_t> pick(0, dim - 1);
        const std::uint64_t guess = pick(rng);
        const std::uint64_t actual = pick(rng);
        correct_output = apply_circuit(circuit, StateVector::basis(n, actual));
        answer = classical_basis_strategy(n, circuit, actual, guess, rng).output;
        break;
      }
      case StrategyKind::RemoteStatePrep: {
        const auto input = sample_haar_state(n, rng);
        correct_output = apply_circuit(circuit, input);
        answer = rsp_strategy(*resource, input, rng).output;
        break;
      }
      case StrategyKind::Approximate: {
        const auto input = sample_haar_state(n, rng);
        const CheckMeasurement check(apply_circuit(circuit, input));
        answer = approximate_output(check, strategy.fidelity);
        ++answered;
        if (check(*answer, rng).is_O) ++correct;
        continue;
      }
    }
    if (!answer) continue;
    ++answered;
    if (check_measurement(*answer, *correct_output, rng).is_O) ++correct;
  }

  // Scores are reconstructed from counts so the result is independent of the
  // order in which trials were accumulated.
  const double P = params.reward_P;
  const double N = params.penalty_N;
  const auto wrong = answered - correct;
  const double total = double(trials);
  const double mean = (double(correct) * P - double(wrong) * N) / total;
  const double second_moment = (double(correct) * P * P + double(wrong) * N * N) / total;
  double variance = 0.0;
  if (trials > 1) variance = std::max(0.0, (second_moment - mean * mean) * total / (total - 1.0));

  GameReport report;
  report.strategy = strategy;
  report.n = n;
  report.params = params;
  report.trials = trials;
  report.answered_count = answered;
  report.correct_O_count = correct;
  report.empirical_mean_score = mean;
  report.analytic_expected_score = expected_score(strategy, n, params);
  report.total_cost = strategy.consumes_resource() ? total * params.cost_C : 0.0;
  report.score_std_error = std::sqrt(variance / total);
  return report;
}

CostAnalysis cost_analysis(int n, const ScoreParams& params) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const double n0 = std::ldexp(1.0, 2 * n);
  return {n0, params.reward_P > n0 * params.cost_C};
}

std::optional<double> approximate_breakeven(int n, double fidelity, double reward_P) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw std::invalid_argument("fidelity must lie in [0, 1]");
  if (fidelity == 1.0) return std::nullopt;
  const double instant = reward_P * std::ldexp(1.0, -2 * n);
  return (reward_P * fidelity - instant) / (1.0 - fidelity);
}

}  // namespace qinstant
