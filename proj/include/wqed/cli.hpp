// Copyright 2026 The wqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WQED_CLI_HPP_
#define WQED_CLI_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wqed/dynamics.hpp"

namespace wqed::cli {

inline constexpr const char* kVersion = "0.1.0";

// A sweep axis: `start:stop:count` (inclusive, linear or log spaced), a comma
// list, or a single value. `text` keeps the canonical spelling for echoes.
struct Axis {
  std::vector<double> values;
  std::string text;
  bool log = false;
};

// Throws ConfigError naming the axis on malformed input.
Axis parse_axis(const std::string& name, const std::string& text, bool log);

enum class Format { kCsv, kJson };

struct SweepConfig {
  std::string command;
  SystemParams params;
  std::optional<Axis> eta;
  std::optional<Axis> delta;
  std::optional<Axis> t;
  std::optional<Axis> omega;
  double t_max = 20.0;
  double dt = 1e-2;
  Method method = Method::kSeries;
  std::string out;  // empty: standard output
  Format format = Format::kCsv;
  int workers = 1;
  std::vector<std::string> log_axes;

  // Flat key-value echo; feeding it back through a config file reproduces
  // the configuration. Worker count is excluded since it never changes output.
  std::map<std::string, std::string> echo() const;
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::map<std::string, std::string> config;  // SweepConfig::echo()
};

// Parses argv (argv[0] is the program name). Flags override values read from
// --config. Throws ConfigError with a one-line message on bad input.
SweepConfig parse_config(const std::vector<std::string>& args);

// Parses flat `key = value` text; '#' starts a comment.
std::map<std::string, std::string> parse_config_text(const std::string& text);

// Builds a validated config from flat key-value pairs ("command" included).
SweepConfig config_from_map(const std::map<std::string, std::string>& kv);

// Inverse of parse_config_text for an echo map.
std::string config_text(const std::map<std::string, std::string>& kv);

// Evaluates every point; output order is fixed regardless of worker count.
ResultTable run_sweep(const SweepConfig& config);

std::string emit(const ResultTable& table, Format format);

// Full program: parse, run, write. Returns the process exit code
// (0 success, 2 configuration error, 3 numerical failure).
int run(const std::vector<std::string>& args);

}  // namespace wqed::cli

#endif  // WQED_CLI_HPP_
