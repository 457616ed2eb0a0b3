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
 * The nested optimization loop: a quantum-gradient step on the circuit state
 * followed by classical re-encoding of the stepped state into the circuit.
 */

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qnom/cost.hpp"
#include "qnom/pqc.hpp"
#include "qnom/qgrad.hpp"
#include "qnom/synth.hpp"

namespace qnom {

enum class EncodeMode {
  Ideal,     ///< the re-encoded state is taken to be the stepped state exactly
  Reencode,  ///< the stepped state is fitted by the circuit (optimize, then append layers)
};
enum class SynthMode { Greedy, RL };
enum class TerminationReason { IndicatorBelowEpsilon, MaxIter };

std::string to_string(EncodeMode m);
std::string to_string(SynthMode m);
std::string to_string(TerminationReason r);
EncodeMode parse_encode_mode(const std::string& s);
SynthMode parse_synth_mode(const std::string& s);

struct LayerPolicy {
  double trigger_ratio = 10.0;  ///< append when c1 > trigger_ratio * epsilon0 ...
  int stagnation_window = 5;    ///< ... or c1 has not improved over this many iterations
};

struct NOMConfig {
  double xi = kDefaultLearningRate;
  double epsilon = 1e-4;
  double epsilon0 = 0.002;
  int max_iter = 100;
  StepSign sign = StepSign::Descent;
  LayerPolicy layer_policy;
  SynthMode synth_mode = SynthMode::Greedy;
  EncodeMode mode = EncodeMode::Reencode;
  double disturbance = 0.0;
  std::uint64_t seed = 0;
  int opt_budget = kDefaultOptBudget;
  int synth_max_depth = 10;
  PPOConfig ppo;  ///< used when synth_mode == RL

  void validate() const;
};

struct IterationRecord {
  int t = 0;
  double cost = 0.0;
  double indicator = 0.0;      ///< delta f = 1 - |<s'|s>|^2
  double c1_after_opt = 0.0;   ///< c1 after re-optimizing the existing circuit
  bool layer_added = false;
  int circuit_depth = 0;
  double fidelity_to_target = 1.0;  ///< |<s'|new state>|^2 after re-encoding
};

struct NOMTrace {
  std::vector<IterationRecord> records;
  Circuit final_circuit;
  ParamVector final_params;
  TerminationReason termination_reason = TerminationReason::MaxIter;
  EncodedState final_state;
  double initial_cost = 0.0;
  double wall_seconds = 0.0;
};

/// The state the problem sees: U(theta)|0> with the problem's logical dimension.
EncodedState problem_state(const CostSpec& problem, const CVec& amps);

/// f of the decoded state (Affine) or <F> (RawState).
double problem_cost(const CostSpec& problem, const EncodedState& s);

NOMTrace nom_run(const CostSpec& problem, const Circuit& circuit, const ParamVector& theta,
                 const NOMConfig& cfg);

struct ReencodeResult {
  Circuit circuit;
  ParamVector theta;
  double c1_after_opt = 1.0;
  double c_final = 1.0;
  bool layer_added = false;
};

/// c1_history holds the step-one c1 of earlier iterations (oldest first).
ReencodeResult reencode(const Circuit& circuit, const ParamVector& theta_prev, const EncodedState& target,
                        const NOMConfig& cfg, const std::vector<double>& c1_history = {});

/// Adds a random complex vector of norm `magnitude` and renormalizes.
EncodedState inject_disturbance(const EncodedState& s, double magnitude, std::mt19937_64& rng);

struct VanishingReport {
  double grad_theta_norm = 0.0;
  double indicator = 0.0;
  bool gradient_vanishing = false;
};

inline constexpr double kVanishingGradTol = 1e-6;

VanishingReport vanishing_detector(const Circuit& circuit, const ParamVector& theta,
                                   const CostSpec& problem, const EncodedState& s_prime,
                                   double epsilon0 = 0.002);

/// One step of the classical affine-chart iteration z <- z - xi df/dconj(z)
/// on components 1..d (reference oracle for the full-state loop).
VariableVector zspace_step(const CostSpec& spec, const VariableVector& z, double xi);

/// Analytic df/dconj(z_i), i = 1..d.
CVec affine_gradient(const CostSpec& spec, const VariableVector& z);

/// t,cost,indicator,c1_after_opt,layer_added,circuit_depth,fidelity_to_target
std::string trace_to_csv(const NOMTrace& trace);
void write_trace_csv(const std::string& path, const NOMTrace& trace);

}  // namespace qnom
