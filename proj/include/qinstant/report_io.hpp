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

// Serialization of reports and configs. CSV numerics are written with 17
// significant digits so that reports round-trip exactly.

#include "qinstant/distributed.hpp"
#include "qinstant/strategies.hpp"

#include "json.hpp"

#include <string>

namespace qinstant {

/// "%.17g"
std::string format_double(double v);

inline constexpr const char* kGameCsvHeader =
    "strategy,n,P,N,C,trials,answered,correct,empirical_score,analytic_score,total_cost";

nlohmann::json to_json(const GameReport& report);
/// One CSV row in kGameCsvHeader column order, without a trailing newline.
std::string to_csv_row(const GameReport& report);

inline constexpr const char* kTimelineCsvHeader =
    "alice_output_time,message_arrival_time,bob_ready_time,bob_can_answer_instantly,"
    "conventional_finish_time,teleport_meets_deadline,conventional_meets_deadline";

/// Reads the seven TimelineConfig fields; every field is required. Throws
/// std::invalid_argument naming the missing or mistyped field.
TimelineConfig timeline_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const TimelineConfig& config);
nlohmann::json to_json(const TimelineReport& report);
std::string to_csv_row(const TimelineReport& report);

}  // namespace qinstant
