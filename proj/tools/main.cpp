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

#include <exception>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qnom/error.hpp"

int main(int argc, char** argv) {
  using namespace qnom::cli;
  CLI::App app{"qnom: nested quantum-classical optimization experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  GlobalOptions& g = ctx.global;
  CommandOptions& c = ctx.cmd;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Base RNG seed");
  app.add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "Output directory")->capture_default_str();
  std::string mode, synth;
  auto* mode_opt = app.add_option("--mode", mode, "Re-encoding mode")->check(CLI::IsMember({"ideal", "reencode"}));
  auto* synth_opt = app.add_option("--synth", synth, "Layer synthesizer")->check(CLI::IsMember({"greedy", "rl"}));
  double xi = 0.0;
  auto* xi_opt = app.add_option("--xi", xi, "Learning rate of the gradient step")->check(CLI::PositiveNumber);
  int max_iter = 0;
  auto* iter_opt = app.add_option("--max-iter", max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  app.add_flag("--check", g.check, "Exit nonzero when an acceptance assertion fails");
  app.add_flag("--plot", g.plot, "Also write plot.svg");

  std::function<int(const Context&)> handler;
  auto sub = [&](const char* name, const char* help, int (*fn)(const Context&)) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&handler, fn] { handler = fn; });
    return s;
  };
  auto* maxcut = sub("maxcut", "Max-Cut NOM ascent for every ansatz (default graph: 4-cycle)", run_maxcut);
  maxcut->add_option("--graph", c.graph_path, "Edge-list graph file")->check(CLI::ExistingFile);
  auto* poly = sub("polyopt", "Quartic polynomial descent from the 12 circle points", run_polyopt);
  poly->add_option("--epsilon", c.epsilon, "Termination threshold on the indicator");
  auto* van = sub("vanish", "Monte Carlo concentration-bound grid", run_vanish);
  van->add_option("--samples", c.samples, "Samples per grid cell");
  auto* lcu = sub("lcu-check", "LCU circuit versus dense gradient step", run_lcu_check);
  lcu->add_option("--configs", c.configs, "Number of random configurations");
  auto* dis = sub("disturb", "Max-Cut NOM under injected state disturbance", run_disturb);
  dis->add_option("--runs", c.runs, "Runs per magnitude");
  dis->add_option("--magnitudes", c.magnitudes, "Disturbance magnitudes")->delimiter(',');
  auto* bp = sub("bp-check", "Layer-gradient formula versus finite differences", run_bp_check);
  bp->add_option("--configs", c.configs, "Number of random configurations");
  auto* st = sub("synth-train", "Train the PPO layer synthesizer on random targets", run_synth_train);
  st->add_option("--targets", c.targets, "Number of random targets");
  st->add_option("--seeds", c.seeds, "Number of training seeds");
  st->add_option("--steps", c.steps, "Environment-step budget per training run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (*seed_opt) g.seed = seed;
  if (*mode_opt) g.mode = mode;
  if (*synth_opt) g.synth = synth;
  if (*xi_opt) g.xi = xi;
  if (*iter_opt) g.max_iter = max_iter;

  try {
    ctx.config = load_config(g.config_path);
    return handler(ctx);
  } catch (const qnom::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
