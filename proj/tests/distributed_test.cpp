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

#include "gtest/gtest.h"

#include <algorithm>

#include "qinstant/report_io.hpp"
#include "qinstant/rng.hpp"

using namespace qinstant;

namespace {

TimelineConfig base_config() {
  TimelineConfig c;
  c.t1 = 10;
  c.t2 = 20;
  c.alice_duration = 2;
  c.bob_duration = 30;
  c.bob_start = -25;
  c.classical_latency = 3;
  c.bsm_duration = 0.5;
  return c;
}

TimelineConfig random_config(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  TimelineConfig c;
  c.t1 = u(rng);
  c.t2 = c.t1 + 0.1 + u(rng) * 2;
  c.alice_duration = u(rng);
  c.bob_duration = u(rng) * 3;
  c.bob_start = c.t1 - 15 + u(rng) * 2;
  c.classical_latency = u(rng);
  c.bsm_duration = u(rng) * 0.2;
  return c;
}

}  // namespace

TEST(Timeline, Arithmetic) {
  const auto r = simulate_timeline(base_config());
  EXPECT_DOUBLE_EQ(r.alice_output_time, 12);
  EXPECT_DOUBLE_EQ(r.message_arrival_time, 15.5);
  EXPECT_DOUBLE_EQ(r.bob_ready_time, 5);
  EXPECT_TRUE(r.bob_can_answer_instantly);
  EXPECT_DOUBLE_EQ(r.teleport_finish_time, 15.5);
  EXPECT_TRUE(r.teleport_meets_deadline);
  EXPECT_DOUBLE_EQ(r.conventional_finish_time, 45);
  EXPECT_FALSE(r.conventional_meets_deadline);
  EXPECT_GE(r.message_arrival_time, r.alice_output_time);
}

TEST(Timeline, BobFinishedBeforeInput) {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    auto c = random_config(rng);
    c.bob_start = c.t1 - c.bob_duration - 1;
    EXPECT_TRUE(simulate_timeline(c).bob_can_answer_instantly);
  }
}

TEST(Timeline, ZeroBobDurationDiffersByBsm) {
  auto c = base_config();
  c.bob_duration = 0;
  c.bob_start = 0;
  const auto r = simulate_timeline(c);
  EXPECT_DOUBLE_EQ(r.teleport_finish_time - r.conventional_finish_time, c.bsm_duration);
}

TEST(Timeline, LatencyCoversBobsComputation) {
  auto c = base_config();
  c.bob_start = c.t1 + c.alice_duration;
  c.classical_latency = 8;
  c.bob_duration = 6;
  c.t2 = 40;
  const auto r = simulate_timeline(c);
  EXPECT_TRUE(r.bob_can_answer_instantly);
  EXPECT_DOUBLE_EQ(r.bob_ready_time, 18);
  EXPECT_DOUBLE_EQ(r.message_arrival_time, 20.5);
}

TEST(Timeline, MonotoneInDeadlineAndBobDuration) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto c = random_config(rng);
    const bool base = simulate_timeline(c).teleport_meets_deadline;
    auto later = c;
    later.t2 += 1.0;
    if (base) EXPECT_TRUE(simulate_timeline(later).teleport_meets_deadline);
    auto slower = c;
    slower.bob_duration += 1.0;
    if (!base) EXPECT_FALSE(simulate_timeline(slower).teleport_meets_deadline);
  }
}

TEST(Timeline, Validation) {
  auto c = base_config();
  c.t2 = c.t1;
  EXPECT_THROW(simulate_timeline(c), std::invalid_argument);
  c = base_config();
  c.classical_latency = -1;
  try {
    simulate_timeline(c);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("classical_latency"), std::string::npos);
  }
}

TEST(TimelineIo, JsonRoundTripAndCsv) {
  const auto c = base_config();
  const auto back = timeline_config_from_json(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
  auto doc = to_json(c);
  doc.erase("bsm_duration");
  EXPECT_THROW(timeline_config_from_json(doc), std::invalid_argument);
  doc = to_json(c);
  doc["t1"] = "soon";
  EXPECT_THROW(timeline_config_from_json(doc), std::invalid_argument);

  const std::string row = to_csv_row(simulate_timeline(c));
  EXPECT_EQ(row, "12,15.5,5,true,45,true,false");
  const std::string header = kTimelineCsvHeader;
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), std::count(header.begin(), header.end(), ','));
}

TEST(ReportIo, SeventeenDigitFormatting) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(-7.25), "-7.25");
  GameReport r;
  r.strategy = Strategy::approximate(0.9);
  r.n = 2;
  r.params = {1, 10, 0};
  r.trials = 10;
  r.answered_count = 10;
  r.correct_O_count = 9;
  r.empirical_mean_score = -0.1;
  r.analytic_expected_score = -0.1;
  EXPECT_EQ(to_csv_row(r), "approx:0.90000000000000002,2,1,10,0,10,10,9,-0.10000000000000001,-0.10000000000000001,0");
  const auto j = to_json(r);
  EXPECT_EQ(j["strategy"], "approx");
  EXPECT_EQ(j["correct"], 9);
}
