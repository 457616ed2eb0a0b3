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
/**
 * @file
 * Layer synthesis: build a shallow circuit T(alpha) carrying an initial state
 * towards a target state, either greedily or with a PPO-trained policy.
 */

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "qnom/encoding.hpp"
#include "qnom/mlp.hpp"
#include "qnom/pqc.hpp"

namespace qnom {

struct Action {
  GateKind kind = GateKind::RX;
  std::vector<int> qubits;
  bool operator==(const Action&) const = default;
};

/// RX, RY, RZ, RXX, RYY, RZZ.
const std::vector<GateKind>& default_gate_set();

/// Single-site kinds over every site (kind-major), then two-site kinds over
/// every unordered pair (i < j, lexicographic).
std::vector<Action> action_space(int n_qubits, const std::vector<GateKind>& gate_set = default_gate_set());

struct SynthEnv {
  EncodedState initial;
  EncodedState target;
  std::vector<GateKind> gate_set = default_gate_set();
  int max_depth = 10;
  double f_t = 0.998;
  double penalty = 0.01;
  int step_budget = 100;    ///< per-step joint parameter optimization
  int polish_budget = 500;  ///< final polish of the accepted layer

  void validate() const;
  int n_qubits() const { return initial.n_qubits(); }
};

/// 10 if f >= f_t; -5 if depth >= max_depth; else
/// max((f - f_prev) / (f_t - f_prev), -1) - penalty (ratio 0 when f_t == f_prev).
double reward(double f, double f_prev, const SynthEnv& env, int depth);

struct SynthResult {
  Circuit layer;
  ParamVector alpha;
  double fidelity = 0.0;
  std::vector<int> actions;
};

/// |<target| T(alpha) |initial>|^2.
double layer_fidelity(const SynthEnv& env, const Circuit& layer, const ParamVector& alpha);

/// Deterministic fallback synthesizer.
SynthResult synthesize_greedy(const SynthEnv& env);

/// Episode environment shared by PPO training and greedy decoding. The outcome
/// of an action sequence is deterministic, so results are memoized per prefix.
class LayerEnv {
 public:
  explicit LayerEnv(const SynthEnv& env);

  void reset();

  struct StepResult {
    double reward = 0.0;
    bool done = false;
    double fidelity = 0.0;
  };
  StepResult step(int action);

  const SynthEnv& env() const noexcept { return env_; }
  const std::vector<Action>& actions() const noexcept { return actions_; }
  std::size_t n_actions() const noexcept { return actions_.size(); }
  CVec current_state() const;
  double fidelity() const noexcept { return fidelity_; }
  int depth() const noexcept { return static_cast<int>(seq_.size()); }
  bool done() const noexcept { return done_; }
  Circuit layer() const;
  const ParamVector& params() const noexcept { return params_; }
  long steps_taken() const noexcept { return steps_; }

 private:
  struct Outcome {
    ParamVector params;
    double fidelity;
  };
  SynthEnv env_;
  std::vector<Action> actions_;
  std::vector<int> seq_;
  ParamVector params_;
  double fidelity_ = 0.0;
  double initial_fidelity_ = 0.0;
  bool done_ = false;
  long steps_ = 0;
  std::shared_ptr<std::map<std::vector<int>, Outcome>> memo_;
};

/// Gauge-fixed (Re, Im) features of the current and target states.
RVec state_features(const CVec& current, const CVec& target);

struct PPOConfig {
  double gamma = 0.99;
  int n_epochs = 4;
  double clip_range = 0.2;
  double learning_rate = 1e-4;
  std::vector<int> hidden_sizes{64, 64};
  long total_steps = 30000;  ///< environment steps, evaluation rollouts included
  int rollout_steps = 128;
  int minibatch = 4;
  double vf_coef = 0.5;
  double max_grad_norm = 0.5;
  double ent_coef = 0.0;
  bool early_stop = true;    ///< stop once greedy decoding reaches f_t ...
  long min_steps = 1024;     ///< ... but not before this many training steps
  std::uint64_t seed = 0;

  void validate() const;
};

class PolicyNet {
 public:
  PolicyNet() = default;
  explicit PolicyNet(ActorCritic net) : net_(std::move(net)) {}
  const ActorCritic& net() const noexcept { return net_; }
  ActorCritic& net() noexcept { return net_; }
  int greedy_action(const CVec& current, const CVec& target) const;

 private:
  ActorCritic net_;
};

struct EpisodeRecord {
  long episode = 0;
  double ret = 0.0;
  double best_fidelity = 0.0;
  long env_steps = 0;  ///< cumulative environment steps when the episode ended
};

struct TrainLog {
  std::vector<EpisodeRecord> episodes;
  long env_steps = 0;
  bool solved = false;
  long steps_at_solve = -1;
  double final_greedy_fidelity = 0.0;
};

PolicyNet ppo_train(const SynthEnv& env, const PPOConfig& cfg, TrainLog* log = nullptr);

/// Greedy (argmax) rollout of the policy followed by the final polish.
SynthResult synthesize_rl(const PolicyNet& policy, const SynthEnv& env);

/// Mean return of the last decile minus that of the first decile.
double decile_return_gain(const std::vector<EpisodeRecord>& episodes);

/// CSV: episode,return,best_fidelity,env_steps.
void write_training_curve(const std::string& path, const std::vector<EpisodeRecord>& episodes,
                          const std::string& tag = "");

inline constexpr double kTrivialTargetFidelity = 0.998;

/// A random circuit of the given depth over the action space, applied to |0...0>.
/// Draws whose state still has fidelity >= kTrivialTargetFidelity with |0...0>
/// are redrawn.
struct RandomTarget {
  Circuit circuit;
  ParamVector theta;
  EncodedState state;
};
RandomTarget random_circuit_target(int n_qubits, int depth, std::mt19937_64& rng,
                                   const std::vector<GateKind>& gate_set = default_gate_set());

}  // namespace qnom
