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

#include "cli.hpp"

#include "gtest/gtest.h"

#include "qinstant/circuit_json.hpp"
#include "qinstant/report_io.hpp"

#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qinstant;
using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "qinstant");
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  CliResult r;
  r.code = cli::run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qinstant_cli_test_" + name);
}

const char* kTimelineJson = R"({"t1": 10, "t2": 20, "alice_duration": 2, "bob_duration": 30,
  "bob_start": -25, "classical_latency": 3, "bsm_duration": 0.5})";

}  // namespace

TEST(CliTeleport, JsonReport) {
  const auto r = run_cli({"teleport", "--n", "2", "--depth", "4", "--trials", "20000", "--seed", "7"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  ASSERT_TRUE(doc.contains("success_rate"));
  EXPECT_EQ(doc["trials"], 20000);
  EXPECT_DOUBLE_EQ(doc["expected_success_rate"].get<double>(), 1.0 / 16);
  EXPECT_NEAR(doc["success_rate"].get<double>(), 1.0 / 16, 3 * doc["success_rate_std_error"].get<double>());
  EXPECT_GE(doc["min_success_fidelity"].get<double>(), 1.0 - 1e-9);
  std::int64_t total = 0;
  for (const auto& [key, count] : doc["outcome_histogram"].items()) total += count.get<std::int64_t>();
  EXPECT_EQ(total, 20000);
  EXPECT_EQ(doc["outcome_histogram"].size(), 16u);
}

TEST(CliTeleport, CorrectionsAndCircuitFile) {
  const auto path = temp_file("bell.json");
  Circuit c(2);
  c.add(gates::hadamard(), {0}).add(gates::cnot(), {0, 1}).add(gates::phase_t(), {1});
  save_circuit(c, path);
  const auto r = run_cli({"teleport", "--circuit", path.string(), "--trials", "500", "--corrections"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["n"], 2);
  EXPECT_EQ(doc["circuit_gates"], 3);
  EXPECT_EQ(doc["corrections"]["extra_circuit_executions"], 2);
  EXPECT_GE(doc["corrections"]["min_fidelity"].get<double>(), 1.0 - 1e-9);
  std::filesystem::remove(path);
}

TEST(CliTeleport, ValidationErrors) {
  auto r = run_cli({"teleport", "--n", "0"});
  EXPECT_EQ(r.code, cli::kExitConfigError);
  EXPECT_NE(r.err.find("--n"), std::string::npos) << r.err;

  r = run_cli({"teleport", "--trials", "0"});
  EXPECT_EQ(r.code, cli::kExitConfigError);
  EXPECT_NE(r.err.find("--trials"), std::string::npos);

  r = run_cli({"teleport", "--n", "two"});
  EXPECT_EQ(r.code, cli::kExitConfigError);

  r = run_cli({"teleport", "--bogus"});
  EXPECT_EQ(r.code, cli::kExitConfigError);

  const auto bad = temp_file("bad.json");
  std::ofstream(bad) << R"({"num_qubits": 1, "gates": [{"name": "Q", "targets": [0]}]})";
  r = run_cli({"teleport", "--circuit", bad.string()});
  EXPECT_EQ(r.code, cli::kExitConfigError);
  std::filesystem::remove(bad);

  EXPECT_EQ(run_cli({}).code, cli::kExitConfigError);
}

TEST(CliGame, SweepProducesOneRowPerPoint) {
  const auto r = run_cli({"game", "--strategies", "instant,random", "--n", "1..5", "--trials", "200"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows[0], kGameCsvHeader);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(std::count(rows[i].begin(), rows[i].end(), ','), 10);
  }
  EXPECT_EQ(rows[1].substr(0, 10), "instant,1,");
  EXPECT_EQ(rows[2].substr(0, 9), "random,1,");
  EXPECT_EQ(rows[10].substr(0, 9), "random,5,");
}

TEST(CliGame, StrategyOrderPreserved) {
  const auto r = run_cli({"game", "--strategies", "no_answer,random,instant", "--trials", "50"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_TRUE(rows[1].starts_with("no_answer,"));
  EXPECT_TRUE(rows[2].starts_with("random,"));
  EXPECT_TRUE(rows[3].starts_with("instant,"));
}

TEST(CliGame, PenaltyAndFidelitySweeps) {
  const auto r = run_cli({"game", "--strategies", "approx,instant", "--n", "2", "--penalty", "8,9", "--fidelity",
                          "0.5,0.9", "--trials", "50", "--json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  // per penalty: two approx fidelities + instant
  ASSERT_EQ(doc.size(), 6u);
  EXPECT_EQ(doc[0]["strategy"], "approx");
  EXPECT_DOUBLE_EQ(doc[0]["fidelity"].get<double>(), 0.5);
  EXPECT_DOUBLE_EQ(doc[1]["fidelity"].get<double>(), 0.9);
  EXPECT_EQ(doc[2]["strategy"], "instant");
  EXPECT_DOUBLE_EQ(doc[3]["N"].get<double>(), 9.0);
}

TEST(CliGame, ValidationErrors) {
  EXPECT_EQ(run_cli({"game", "--strategies", ""}).code, cli::kExitConfigError);
  EXPECT_EQ(run_cli({"game", "--strategies", ","}).code, cli::kExitConfigError);
  EXPECT_EQ(run_cli({"game", "--strategies", "telepathy"}).code, cli::kExitConfigError);
  EXPECT_EQ(run_cli({"game", "--n", "6"}).code, cli::kExitConfigError);
  EXPECT_EQ(run_cli({"game", "--n", "3..1"}).code, cli::kExitConfigError);
  EXPECT_EQ(run_cli({"game", "--reward", "0"}).code, cli::kExitConfigError);
  EXPECT_EQ(run_cli({"game", "--fidelity", "1.2", "--strategies", "approx"}).code, cli::kExitConfigError);
}

TEST(CliGame, ConfigFileOverridesFlags) {
  const auto cfg = temp_file("game.json");
  std::ofstream(cfg) << R"({"strategies": ["classical", "rsp"], "n": [1, 2], "trials": 30, "seed": 5})";
  const auto r = run_cli({"game", "--strategies", "instant", "--trials", "10", "--config", cfg.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_TRUE(rows[1].starts_with("classical,1,"));
  EXPECT_TRUE(rows[4].starts_with("rsp,2,"));
  EXPECT_NE(rows[1].find(",30,"), std::string::npos);

  std::ofstream(cfg) << R"({"trials": "many"})";
  EXPECT_EQ(run_cli({"game", "--config", cfg.string()}).code, cli::kExitConfigError);
  std::filesystem::remove(cfg);
  EXPECT_EQ(run_cli({"game", "--config", cfg.string()}).code, cli::kExitConfigError);
}

TEST(CliTimeline, StdinJsonToJson) {
  const auto r = run_cli({"timeline"}, kTimelineJson);
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["teleport_meets_deadline"], true);
  EXPECT_EQ(doc["conventional_meets_deadline"], false);
  EXPECT_DOUBLE_EQ(doc["message_arrival_time"].get<double>(), 15.5);
}

TEST(CliTimeline, CsvFlag) {
  const auto r = run_cli({"timeline", "--csv"}, kTimelineJson);
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], kTimelineCsvHeader);
  EXPECT_EQ(rows[1], "12,15.5,5,true,45,true,false");
}

TEST(CliTimeline, ValidationErrors) {
  auto r = run_cli({"timeline"}, R"({"t1": 5, "t2": 5, "alice_duration": 1, "bob_duration": 1,
    "bob_start": 0, "classical_latency": 1, "bsm_duration": 0})");
  EXPECT_EQ(r.code, cli::kExitConfigError);
  EXPECT_NE(r.err.find("t2"), std::string::npos);
  EXPECT_EQ(run_cli({"timeline"}, "{not json").code, cli::kExitConfigError);
  EXPECT_EQ(run_cli({"timeline"}, R"({"t1": 1})").code, cli::kExitConfigError);
}

TEST(CliTimeline, ConfigFile) {
  const auto cfg = temp_file("timeline.json");
  std::ofstream(cfg) << kTimelineJson;
  const auto r = run_cli({"timeline", "--config", cfg.string(), "--csv"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(lines(r.out).size(), 2u);
  std::filesystem::remove(cfg);
}

TEST(CliDeterminism, ByteIdenticalOutputs) {
  const std::vector<std::vector<std::string>> commands = {
      {"teleport", "--n", "2", "--trials", "3000", "--seed", "11", "--corrections"},
      {"game", "--strategies", "no_answer,random,instant,classical,rsp,approx:0.8", "--n", "1..3", "--trials", "300",
       "--seed", "11"},
      {"game", "--strategies", "random,approx", "--json", "--trials", "300", "--seed", "11"},
  };
  for (const auto& cmd : commands) {
    const auto a = run_cli(cmd);
    const auto b = run_cli(cmd);
    ASSERT_EQ(a.code, cli::kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
  auto other = commands[0];
  other[6] = "12";
  EXPECT_NE(run_cli(commands[0]).out, run_cli(other).out);
}

TEST(CliOutput, OutFlagWritesFile) {
  const auto path = temp_file("out.csv");
  const auto r = run_cli({"game", "--trials", "20", "--out", path.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(lines(buf.str()).size(), 4u);
  std::filesystem::remove(path);
}
