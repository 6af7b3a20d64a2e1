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

// The evaluation game. An answered output is check-measured against the
// correct output U|input>; outcome O earns reward P, anything else costs
// penalty N, and declining to answer scores 0.

#include "qinstant/circuit.hpp"
#include "qinstant/rng.hpp"
#include "qinstant/statevec.hpp"
#include "qinstant/teleport.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qinstant {

struct ScoreParams {
  double reward_P = 1.0;
  double penalty_N = 0.0;
  /// Cost of consuming one offline resource, in score units.
  double cost_C = 0.0;

  /// Throws std::invalid_argument unless P > 0 and N, C >= 0.
  void validate() const;
};

enum class StrategyKind { NoAnswer, RandomGuess, Instantaneous, ClassicalBasis, RemoteStatePrep, Approximate };

struct Strategy {
  StrategyKind kind = StrategyKind::NoAnswer;
  /// Check-pass probability of the Approximate strategy; unused otherwise.
  double fidelity = 1.0;

  static Strategy approximate(double fidelity);

  /// Short identifier: no_answer, random, instant, classical, rsp, approx.
  std::string name() const;
  /// Inverse of name(); "approx" takes its fidelity as "approx:0.9".
  static Strategy parse(std::string_view text);

  /// True for strategies that consume an offline run per trial.
  bool consumes_resource() const;

  bool operator==(const Strategy&) const = default;
};

struct GameReport {
  Strategy strategy;
  int n = 0;
  ScoreParams params;
  std::int64_t trials = 0;
  std::int64_t answered_count = 0;
  std::int64_t correct_O_count = 0;
  double empirical_mean_score = 0;
  double analytic_expected_score = 0;
  double total_cost = 0;
  /// Standard error of empirical_mean_score from the per-trial sample
  /// variance.
  double score_std_error = 0;
};

/// Expected score per trial, excluding resource cost.
double expected_score(const Strategy& strategy, int n, const ScoreParams& params);

/// Plays `trials` independent rounds. Trial t draws from stream
/// derive_stream(seed, t), so the report depends only on the arguments.
GameReport run_game(const Strategy& strategy, int n, const Circuit& circuit, const ScoreParams& params,
                    std::int64_t trials, std::uint64_t seed);

struct StrategyOutput {
  bool answered = false;
  std::optional<StateVector> output;
};

/// Known-basis input: the computation was done offline on basis state
/// `precomputed_guess_index`. Measuring the actual input in the computational
/// basis tells with certainty whether the guess was right.
StrategyOutput classical_basis_strategy(int n, const Circuit& circuit, std::uint64_t actual_input_index,
                                        std::uint64_t precomputed_guess_index, Rng& rng);

/// Remote state preparation of U|known_input> from a fresh offline resource.
StrategyOutput rsp_strategy(int n, const Circuit& circuit, const StateVector& known_input, Rng& rng);

/// Same, reusing an already prepared resource.
StrategyOutput rsp_strategy(const OfflineResource& resource, const StateVector& known_input, Rng& rng);

/// Output of the Approximate strategy: sqrt(F)|correct> + sqrt(1-F)|perp>,
/// where |perp> is the second vector of the check-measurement basis.
StateVector approximate_output(const CheckMeasurement& check, double fidelity);

struct CostAnalysis {
  /// Expected number of attempts per success, 4^n.
  double expected_attempts_n0 = 0;
  /// reward_P > n0 * cost_C.
  bool pays_off = false;
};

CostAnalysis cost_analysis(int n, const ScoreParams& params);

/// Penalty N at which Approximate(F) and Instantaneous score equally:
/// (P F - P 4^-n) / (1 - F). Above it Instantaneous wins. Returns nullopt for
/// F = 1, where no finite penalty makes Instantaneous competitive.
std::optional<double> approximate_breakeven(int n, double fidelity, double reward_P);

}  // namespace qinstant
