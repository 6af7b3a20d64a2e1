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

#include "qinstant/circuit_json.hpp"
#include "qinstant/report_io.hpp"
#include "qinstant/strategies.hpp"
#include "qinstant/teleport.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace qinstant::cli {

namespace {

using nlohmann::json;

// Largest protocol size whose 3n-qubit register fits the default limit.
constexpr int kMaxProtocolQubits = kDefaultMaxQubits / 3;

// Stream layout under the root seed: stream 0 seeds circuit generation
// (sub-stream n for an n-qubit circuit), stream 1 + p seeds the trials of
// parameter point p.
constexpr std::uint64_t kCircuitStream = 0;
constexpr std::uint64_t kFirstTrialStream = 1;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::uint64_t seed = 1;
  std::string out_path;
  std::string config_path;
  bool csv = false;
};

struct TeleportOptions {
  int n = 2;
  int depth = 4;
  std::string circuit_path;
  std::int64_t trials = 10000;
  bool corrections = false;
};

struct GameOptions {
  std::string strategies = "no_answer,random,instant";
  std::string n = "2";
  std::string penalty = "10";
  std::string fidelity = "0.9";
  double reward = 1.0;
  double cost = 0.0;
  int depth = 4;
  std::string circuit_path;
  std::int64_t trials = 10000;
  bool json_output = false;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

template <typename T>
void override_from(const json& doc, const char* key, T& value) {
  if (!doc.contains(key)) return;
  try {
    value = doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + key + "' has the wrong type");
  }
}

// Lists may be given as "a,b,c" strings or as JSON arrays.
void override_list(const json& doc, const char* key, std::string& value) {
  if (!doc.contains(key)) return;
  const auto& v = doc.at(key);
  if (v.is_string()) {
    value = v.get<std::string>();
  } else if (v.is_array()) {
    std::string joined;
    for (const auto& item : v) {
      if (!joined.empty()) joined += ',';
      joined += item.is_string() ? item.get<std::string>() : item.dump();
    }
    value = joined;
  } else if (v.is_number()) {
    value = v.dump();
  } else {
    throw ConfigError(std::string("config field '") + key + "' must be a list");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

double parse_double(const std::string& text, const char* field) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ConfigError(std::string("invalid value for ") + field + ": '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const char* field) {
  const double v = parse_double(text, field);
  if (v != std::floor(v) || std::abs(v) > 1e6) {
    throw ConfigError(std::string("invalid value for ") + field + ": '" + text + "'");
  }
  return int(v);
}

void check_protocol_n(int n) {
  if (n < 1 || n > kMaxProtocolQubits) {
    throw ConfigError("invalid value for --n: " + std::to_string(n) + " (must be in [1, " +
                      std::to_string(kMaxProtocolQubits) + "])");
  }
}

// "1..5" or "1,2,4".
std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> values;
  for (const auto& part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      values.push_back(parse_int(part, "--n"));
    } else {
      const int lo = parse_int(part.substr(0, dots), "--n");
      const int hi = parse_int(part.substr(dots + 2), "--n");
      if (hi < lo) throw ConfigError("invalid value for --n: empty range '" + part + "'");
      for (int v = lo; v <= hi; ++v) values.push_back(v);
    }
  }
  if (values.empty()) throw ConfigError("invalid value for --n: empty list");
  for (int n : values) check_protocol_n(n);
  return values;
}

std::vector<double> parse_double_list(const std::string& text, const char* field) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_double(part, field));
  if (values.empty()) throw ConfigError(std::string("invalid value for ") + field + ": empty list");
  return values;
}

void check_trials(std::int64_t trials) {
  if (trials < 1) throw ConfigError("invalid value for --trials: " + std::to_string(trials) + " (must be >= 1)");
}

void check_depth(int depth) {
  if (depth < 0) throw ConfigError("invalid value for --depth: " + std::to_string(depth) + " (must be >= 0)");
}

Circuit load_circuit_checked(const std::string& path) {
  try {
    return load_circuit(path);
  } catch (const CircuitFormatError& e) {
    throw ConfigError(std::string("--circuit: ") + e.what());
  }
}

Circuit circuit_for(int n, int depth, const std::optional<Circuit>& file_circuit, std::uint64_t seed) {
  if (file_circuit) {
    if (file_circuit->num_qubits() != n) {
      throw ConfigError("invalid value for --n: " + std::to_string(n) + " does not match the " +
                        std::to_string(file_circuit->num_qubits()) + "-qubit circuit file");
    }
    return *file_circuit;
  }
  Rng rng = derive_stream(derive_seed(seed, kCircuitStream), std::uint64_t(n));
  return random_circuit(n, depth, rng);
}

void emit(const CommonOptions& common, const std::string& data, std::ostream& out) {
  if (common.out_path.empty()) {
    out << data;
    return;
  }
  std::ofstream file(common.out_path);
  if (!file) throw std::runtime_error("cannot write " + common.out_path);
  file << data;
}

int cmd_teleport(CommonOptions common, TeleportOptions opt, std::ostream& out) {
  if (!common.config_path.empty()) {
    const json doc = read_json_file(common.config_path);
    override_from(doc, "seed", common.seed);
    override_from(doc, "n", opt.n);
    override_from(doc, "depth", opt.depth);
    override_from(doc, "circuit", opt.circuit_path);
    override_from(doc, "trials", opt.trials);
    override_from(doc, "corrections", opt.corrections);
    override_from(doc, "csv", common.csv);
  }
  std::optional<Circuit> file_circuit;
  if (!opt.circuit_path.empty()) {
    file_circuit = load_circuit_checked(opt.circuit_path);
    if (opt.n != file_circuit->num_qubits()) opt.n = file_circuit->num_qubits();
  }
  check_protocol_n(opt.n);
  check_depth(opt.depth);
  check_trials(opt.trials);

  const Circuit circuit = circuit_for(opt.n, opt.depth, file_circuit, common.seed);
  const OfflineResource resource = prepare_offline(circuit);
  const std::uint64_t trial_root = derive_seed(common.seed, kFirstTrialStream);

  std::map<std::string, std::int64_t> histogram;
  std::int64_t successes = 0;
  double min_success_fidelity = 1.0;
  double sum_success_fidelity = 0.0;
  double min_corrected_fidelity = 1.0;
  int extra_executions = 0;
  for (std::int64_t t = 0; t < opt.trials; ++t) {
    Rng rng = derive_stream(trial_root, std::uint64_t(t));
    const StateVector input = sample_haar_state(opt.n, rng);
    const StateVector expected = apply_circuit(circuit, input);
    const InstantRunResult run = run_instantaneous(resource, input, rng);
    ++histogram[run.outcome.to_string()];
    if (run.success) {
      ++successes;
      const double f = fidelity(run.output_state, expected);
      min_success_fidelity = std::min(min_success_fidelity, f);
      sum_success_fidelity += f;
    }
    if (opt.corrections) {
      const CorrectedRun fixed = run_with_corrections(run, circuit);
      min_corrected_fidelity = std::min(min_corrected_fidelity, fidelity(fixed.output, expected));
      extra_executions = fixed.extra_circuit_executions;
    }
  }

  const double rate = double(successes) / double(opt.trials);
  const double expected_rate = std::ldexp(1.0, -2 * opt.n);
  std::string data;
  if (common.csv) {
    data = "n,trials,successes,success_rate,expected_success_rate,min_success_fidelity\n" + std::to_string(opt.n) +
           "," + std::to_string(opt.trials) + "," + std::to_string(successes) + "," + format_double(rate) + "," +
           format_double(expected_rate) + "," + format_double(successes ? min_success_fidelity : 0.0) + "\n";
  } else {
    json report{{"n", opt.n},
                {"trials", opt.trials},
                {"seed", common.seed},
                {"circuit_gates", circuit.size()},
                {"successes", successes},
                {"success_rate", rate},
                {"expected_success_rate", expected_rate},
                {"success_rate_std_error", std::sqrt(expected_rate * (1 - expected_rate) / double(opt.trials))},
                {"outcome_histogram", histogram}};
    if (file_circuit) {
      report["circuit"] = opt.circuit_path;
    } else {
      report["depth"] = opt.depth;
    }
    if (successes > 0) {
      report["min_success_fidelity"] = min_success_fidelity;
      report["mean_success_fidelity"] = sum_success_fidelity / double(successes);
    }
    if (opt.corrections) {
      report["corrections"] = {{"runs", opt.trials},
                               {"min_fidelity", min_corrected_fidelity},
                               {"extra_circuit_executions", extra_executions}};
    }
    data = report.dump(2) + "\n";
  }
  emit(common, data, out);
  return kExitOk;
}

int cmd_game(CommonOptions common, GameOptions opt, std::ostream& out) {
  if (!common.config_path.empty()) {
    const json doc = read_json_file(common.config_path);
    override_from(doc, "seed", common.seed);
    override_list(doc, "strategies", opt.strategies);
    override_list(doc, "n", opt.n);
    override_list(doc, "penalty", opt.penalty);
    override_list(doc, "fidelity", opt.fidelity);
    override_from(doc, "reward", opt.reward);
    override_from(doc, "cost", opt.cost);
    override_from(doc, "depth", opt.depth);
    override_from(doc, "circuit", opt.circuit_path);
    override_from(doc, "trials", opt.trials);
    override_from(doc, "json", opt.json_output);
  }

  const auto names = split(opt.strategies, ',');
  if (names.empty()) throw ConfigError("invalid value for --strategies: empty list");
  std::vector<Strategy> strategies;
  std::vector<bool> sweep_fidelity;
  for (const auto& name : names) {
    try {
      strategies.push_back(Strategy::parse(name));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("invalid value for --strategies: ") + e.what());
    }
    sweep_fidelity.push_back(name == "approx");
  }
  const auto ns = parse_n_list(opt.n);
  const auto penalties = parse_double_list(opt.penalty, "--penalty");
  const auto fidelities = parse_double_list(opt.fidelity, "--fidelity");
  for (double f : fidelities) {
    if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("invalid value for --fidelity: " + format_double(f));
  }
  check_depth(opt.depth);
  check_trials(opt.trials);
  ScoreParams base{opt.reward, 0.0, opt.cost};
  for (double penalty : penalties) {
    try {
      ScoreParams{base.reward_P, penalty, base.cost_C}.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("invalid value for --reward/--penalty/--cost: ") + e.what());
    }
  }
  std::optional<Circuit> file_circuit;
  if (!opt.circuit_path.empty()) file_circuit = load_circuit_checked(opt.circuit_path);

  std::vector<GameReport> reports;
  std::uint64_t point = 0;
  for (int n : ns) {
    const Circuit circuit = circuit_for(n, opt.depth, file_circuit, common.seed);
    for (double penalty : penalties) {
      const ScoreParams params{base.reward_P, penalty, base.cost_C};
      for (std::size_t s = 0; s < strategies.size(); ++s) {
        std::vector<Strategy> variants{strategies[s]};
        if (sweep_fidelity[s]) {
          variants.clear();
          for (double f : fidelities) variants.push_back(Strategy::approximate(f));
        }
        for (const auto& strategy : variants) {
          const std::uint64_t root = derive_seed(common.seed, kFirstTrialStream + point++);
          reports.push_back(run_game(strategy, n, circuit, params, opt.trials, root));
        }
      }
    }
  }

  std::string data;
  if (opt.json_output) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    data = arr.dump(2) + "\n";
  } else {
    data = std::string(kGameCsvHeader) + "\n";
    for (const auto& r : reports) data += to_csv_row(r) + "\n";
  }
  emit(common, data, out);
  return kExitOk;
}

int cmd_timeline(const CommonOptions& common, std::istream& in, std::ostream& out) {
  json doc;
  if (!common.config_path.empty()) {
    doc = read_json_file(common.config_path);
  } else {
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("timeline config on stdin: ") + e.what());
    }
  }
  TimelineConfig config;
  try {
    config = timeline_config_from_json(doc);
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid timeline config: ") + e.what());
  }
  const TimelineReport report = simulate_timeline(config);
  const std::string data = common.csv ? std::string(kTimelineCsvHeader) + "\n" + to_csv_row(report) + "\n"
                                      : to_json(report).dump(2) + "\n";
  emit(common, data, out);
  return kExitOk;
}

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--seed", common.seed, "Root random seed");
  cmd->add_option("--out", common.out_path, "Write data to this file instead of stdout");
  cmd->add_option("--config", common.config_path, "JSON config; its fields override flags");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Teleportation-based instantaneous quantum computation simulator", "qinstant"};
  app.require_subcommand(1);

  CommonOptions teleport_common;
  TeleportOptions teleport_opt;
  auto* teleport = app.add_subcommand("teleport", "Run the instantaneous protocol on random inputs");
  add_common(teleport, teleport_common);
  teleport->add_option("--n", teleport_opt.n, "Number of input qubits");
  teleport->add_option("--depth", teleport_opt.depth, "Depth of the random circuit");
  teleport->add_option("--circuit", teleport_opt.circuit_path, "Circuit JSON file (overrides --n/--depth)");
  teleport->add_option("--trials", teleport_opt.trials, "Number of protocol runs");
  teleport->add_flag("--corrections", teleport_opt.corrections, "Also run the undo-correct-redo path");
  teleport->add_flag("--csv", teleport_common.csv, "CSV output");

  CommonOptions game_common;
  GameOptions game_opt;
  auto* game = app.add_subcommand("game", "Score strategies in the evaluation game");
  add_common(game, game_common);
  game->add_option("--strategies", game_opt.strategies,
                   "Comma list of no_answer, random, instant, classical, rsp, approx[:F]");
  game->add_option("--n", game_opt.n, "Qubit counts: '2', '1,3' or '1..5'");
  game->add_option("--penalty", game_opt.penalty, "Penalty N values, comma list");
  game->add_option("--fidelity", game_opt.fidelity, "Fidelities swept by a bare 'approx', comma list");
  game->add_option("--reward", game_opt.reward, "Reward P");
  game->add_option("--cost", game_opt.cost, "Cost C per consumed run");
  game->add_option("--depth", game_opt.depth, "Depth of the random circuit");
  game->add_option("--circuit", game_opt.circuit_path, "Circuit JSON file");
  game->add_option("--trials", game_opt.trials, "Trials per row");
  game->add_flag("--json", game_opt.json_output, "JSON output instead of CSV");
  game->add_flag("--csv", game_common.csv, "CSV output (default)");

  CommonOptions timeline_common;
  auto* timeline = app.add_subcommand("timeline", "Evaluate a two-site timeline (config JSON on stdin or --config)");
  add_common(timeline, timeline_common);
  timeline->add_flag("--csv", timeline_common.csv, "CSV output");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (teleport->parsed()) return cmd_teleport(teleport_common, teleport_opt, out);
    if (game->parsed()) return cmd_game(game_common, game_opt, out);
    if (timeline->parsed()) return cmd_timeline(timeline_common, in, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitConfigError;
}

}  // namespace qinstant::cli
