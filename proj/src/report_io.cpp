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

#include "qinstant/report_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace qinstant {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const GameReport& r) {
  json j{{"strategy", r.strategy.name()},
         {"n", r.n},
         {"P", r.params.reward_P},
         {"N", r.params.penalty_N},
         {"C", r.params.cost_C},
         {"trials", r.trials},
         {"answered", r.answered_count},
         {"correct", r.correct_O_count},
         {"empirical_score", r.empirical_mean_score},
         {"analytic_score", r.analytic_expected_score},
         {"total_cost", r.total_cost},
         {"score_std_error", r.score_std_error}};
  if (r.strategy.kind == StrategyKind::Approximate) j["fidelity"] = r.strategy.fidelity;
  return j;
}

std::string to_csv_row(const GameReport& r) {
  std::string name = r.strategy.name();
  if (r.strategy.kind == StrategyKind::Approximate) name += ":" + format_double(r.strategy.fidelity);
  return name + "," + std::to_string(r.n) + "," + format_double(r.params.reward_P) + "," +
         format_double(r.params.penalty_N) + "," + format_double(r.params.cost_C) + "," + std::to_string(r.trials) +
         "," + std::to_string(r.answered_count) + "," + std::to_string(r.correct_O_count) + "," +
         format_double(r.empirical_mean_score) + "," + format_double(r.analytic_expected_score) + "," +
         format_double(r.total_cost);
}

TimelineConfig timeline_config_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("timeline config must be a JSON object");
  auto field = [&](const char* key) {
    if (!doc.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
    const auto& v = doc.at(key);
    if (!v.is_number()) throw std::invalid_argument(std::string("field '") + key + "' must be a number");
    return v.get<double>();
  };
  TimelineConfig c;
  c.t1 = field("t1");
  c.t2 = field("t2");
  c.alice_duration = field("alice_duration");
  c.bob_duration = field("bob_duration");
  c.bob_start = field("bob_start");
  c.classical_latency = field("classical_latency");
  c.bsm_duration = field("bsm_duration");
  return c;
}

json to_json(const TimelineConfig& c) {
  return {{"t1", c.t1},
          {"t2", c.t2},
          {"alice_duration", c.alice_duration},
          {"bob_duration", c.bob_duration},
          {"bob_start", c.bob_start},
          {"classical_latency", c.classical_latency},
          {"bsm_duration", c.bsm_duration}};
}

json to_json(const TimelineReport& r) {
  return {{"alice_output_time", r.alice_output_time},
          {"message_arrival_time", r.message_arrival_time},
          {"bob_ready_time", r.bob_ready_time},
          {"bob_can_answer_instantly", r.bob_can_answer_instantly},
          {"teleport_finish_time", r.teleport_finish_time},
          {"conventional_finish_time", r.conventional_finish_time},
          {"teleport_meets_deadline", r.teleport_meets_deadline},
          {"conventional_meets_deadline", r.conventional_meets_deadline}};
}

std::string to_csv_row(const TimelineReport& r) {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return format_double(r.alice_output_time) + "," + format_double(r.message_arrival_time) + "," +
         format_double(r.bob_ready_time) + "," + b(r.bob_can_answer_instantly) + "," +
         format_double(r.conventional_finish_time) + "," + b(r.teleport_meets_deadline) + "," +
         b(r.conventional_meets_deadline);
}

}  // namespace qinstant
