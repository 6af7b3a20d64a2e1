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

// Two-site timeline: Alice produces the input qubits for Bob's computation.
// With pre-shared pairs Bob runs his part on his pair halves ahead of time
// and only waits for Alice's Bell-measurement result; conventionally he
// must wait for her output qubits and then compute.

namespace qinstant {

struct TimelineConfig {
  double t1 = 0;  ///< input handed to Alice
  double t2 = 0;  ///< deadline
  double alice_duration = 0;
  double bob_duration = 0;
  double bob_start = 0;  ///< Bob feeds his pair halves into his computer
  double classical_latency = 0;  ///< one way, Alice to Bob
  double bsm_duration = 0;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

struct TimelineReport {
  double alice_output_time = 0;
  double message_arrival_time = 0;
  double bob_ready_time = 0;
  bool bob_can_answer_instantly = false;
  /// max(bob_ready_time, message_arrival_time)
  double teleport_finish_time = 0;
  double conventional_finish_time = 0;
  /// Success branch only; corrections are not part of the timeline.
  bool teleport_meets_deadline = false;
  bool conventional_meets_deadline = false;
};

TimelineReport simulate_timeline(const TimelineConfig& config);

}  // namespace qinstant
