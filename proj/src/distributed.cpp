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

#include "qinstant/distributed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qinstant {

namespace {

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(field) + " must be finite");
}

void require_non_negative(double v, const char* field) {
  require_finite(v, field);
  if (v < 0) throw std::invalid_argument(std::string(field) + " must be non-negative");
}

}  // namespace

void TimelineConfig::validate() const {
  require_finite(t1, "t1");
  require_finite(t2, "t2");
  require_finite(bob_start, "bob_start");
  if (!(t2 > t1)) throw std::invalid_argument("t2 must be later than t1");
  require_non_negative(alice_duration, "alice_duration");
  require_non_negative(bob_duration, "bob_duration");
  require_non_negative(classical_latency, "classical_latency");
  require_non_negative(bsm_duration, "bsm_duration");
}

TimelineReport simulate_timeline(const TimelineConfig& c) {
  c.validate();
  TimelineReport r;
  r.alice_output_time = c.t1 + c.alice_duration;
  r.message_arrival_time = r.alice_output_time + c.bsm_duration + c.classical_latency;
  r.bob_ready_time = c.bob_start + c.bob_duration;
  r.bob_can_answer_instantly = r.bob_ready_time <= r.message_arrival_time;
  r.teleport_finish_time = std::max(r.bob_ready_time, r.message_arrival_time);
  r.teleport_meets_deadline = r.teleport_finish_time <= c.t2;
  r.conventional_finish_time = r.alice_output_time + c.classical_latency + c.bob_duration;
  r.conventional_meets_deadline = r.conventional_finish_time <= c.t2;
  return r;
}

}  // namespace qinstant
