// Copyright 2026 The qnom Authors
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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qnom::cli {

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::string out_dir = "qnom_out";
  std::optional<std::string> mode;
  std::optional<std::string> synth;
  std::optional<double> xi;
  std::optional<int> max_iter;
  bool check = false;
  bool plot = false;
};

/// Per-subcommand flags; unset values fall back to the config file, then to
/// the subcommand default.
struct CommandOptions {
  std::string graph_path;
  std::optional<int> runs;
  std::optional<std::vector<double>> magnitudes;
  std::optional<int> targets;
  std::optional<int> seeds;
  std::optional<long> steps;
  std::optional<long> samples;
  std::optional<int> configs;
  std::optional<double> epsilon;
};

struct Context {
  GlobalOptions global;
  CommandOptions cmd;
  nlohmann::json config = nlohmann::json::object();
};

/// Loads and validates the --config file (empty object when no path).
nlohmann::json load_config(const std::string& path);

int run_maxcut(const Context& ctx);
int run_polyopt(const Context& ctx);
int run_vanish(const Context& ctx);
int run_lcu_check(const Context& ctx);
int run_disturb(const Context& ctx);
int run_bp_check(const Context& ctx);
int run_synth_train(const Context& ctx);

}  // namespace qnom::cli
