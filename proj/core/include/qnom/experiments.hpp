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
 * Experiment drivers and the classical oracles they are checked against.
 */

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qnom/cost.hpp"
#include "qnom/nom.hpp"
#include "qnom/pqc.hpp"

namespace qnom {

/// Exhaustive maximum cut; throws InvalidArgument for n > 20.
int brute_force_maxcut(const Graph& g);

struct StationaryFit {
  ParamVector theta;
  double cost = 0.0;
  double grad_norm = 0.0;
  int evals = 0;
};

/// Maximizes <obs> until ||grad|| <= grad_tol or max_evals objective calls,
/// finishing with Newton steps on the parameter-shift gradient.
StationaryFit train_to_stationarity(const Circuit& c, const ParamVector& theta0, const CMat& obs,
                                    int max_evals = 2000, double grad_tol = 1e-6);

/// with_plus_reference(ansatz_library(id, g)).
Circuit maxcut_initial_circuit(AnsatzId id, const Graph& g);

/// Fixed, seed-independent starting angles for the stationarity training.
ParamVector maxcut_initial_params(const Circuit& c);

struct RunRecord {
  std::string label;
  NOMTrace trace;
  std::map<std::string, double> extras;
};

struct Aggregates {
  double mean_final_cost = 0.0;
  double std_final_cost = 0.0;
  double mean_iterations = 0.0;
};

struct ExperimentReport {
  std::string name;
  std::map<std::string, std::string> config;
  std::vector<RunRecord> runs;
  Aggregates aggregates;
  double wall_seconds = 0.0;
};

Aggregates compute_aggregates(const std::vector<RunRecord>& runs);
double final_cost(const NOMTrace& t);

std::map<std::string, std::string> config_snapshot(const NOMConfig& cfg);

/// For every ansatz: train to stationarity, then run NOM ascent in each of the
/// requested modes. Labels are "<ANSATZ>/<mode>"; extras hold init_cost,
/// init_grad_norm, final_cost, optimum.
ExperimentReport run_maxcut_experiment(const NOMConfig& cfg, const Graph& graph,
                                       const std::vector<EncodeMode>& modes = {EncodeMode::Ideal,
                                                                               EncodeMode::Reencode},
                                       const std::vector<AnsatzId>& ansatze = all_ansatz_ids());

/// The 12 starting points (1.3 cos(k pi/6), 1.3 sin(k pi/6), 0).
std::vector<VariableVector> poly_initial_points();

/// Greedy state-to-state circuit for encode(z) from |0...0>, f_t = 0.998.
std::pair<Circuit, ParamVector> poly_initial_circuit(const VariableVector& z);

/// Minima of the quartic benchmark restricted to the real z3 = 0 plane: descent
/// from every cell of a grid x grid lattice on [-range, range]^2, clustered at
/// cluster_tol, keeping points with a positive definite Hessian.
std::vector<std::pair<double, double>> plane_minima_oracle(int grid = 401, double range = 2.0,
                                                           double cluster_tol = 1e-2);

/// Extras per run: x0, y0, init_fidelity, final_re_1..3, final_im_1..3,
/// grad_norm, nearest_min, min_distance, cost_monotone.
ExperimentReport run_poly_experiment(const NOMConfig& cfg);

struct SweepPoint {
  double magnitude = 0.0;
  std::vector<double> mean_cost;  ///< per iteration
  std::vector<double> std_cost;
  double mean_final_cost = 0.0;
};

struct SweepReport {
  ExperimentReport report;
  std::vector<SweepPoint> points;
};

/// nom_run with disturbance after each re-encoding; run r of every magnitude
/// uses seed cfg.seed + r.
SweepReport disturbance_sweep(const NOMConfig& cfg, const CostSpec& problem, const Circuit& circuit,
                              const ParamVector& theta, const std::vector<double>& magnitudes,
                              int runs_per_magnitude);

struct DampingRow {
  double xi = 0.0;
  double ratio = 0.0;       ///< ||error after|| / ||error before||, worst over directions
  double contraction = 0.0; ///< ||I - xi H||_2
};

struct DampingReport {
  std::vector<double> minimum;  ///< real coordinates of the refined minimum
  std::vector<double> hessian_eigs;
  double lambda_max = 0.0;
  std::vector<DampingRow> rows;
};

/// One perturbed step x <- x - xi grad f(x) in real coordinates (Re z_1..z_d,
/// and Im z_1..z_d unless real_only) started from minimum + delta.
DampingReport perturbation_damping_demo(const CostSpec& spec, const VariableVector& z, double delta_norm,
                                        const std::vector<double>& xi_grid, bool real_only = false,
                                        int directions = 8, std::uint64_t seed = 0);

struct RlTargetRun {
  int seed_index = 0;
  int target_index = 0;
  int target_depth = 0;
  double fidelity = 0.0;
  bool solved = false;
  TrainLog log;
};

struct RlBenchmark {
  std::vector<RandomTarget> targets;
  std::vector<RlTargetRun> runs;  ///< seed-major
  double success_rate = 0.0;
  bool within_budget = true;
  /// Per seed: mean decile_return_gain over targets with >= 10 episodes (NaN if none).
  std::vector<double> mean_gain;
};

/// Trains a fresh policy per (seed, target) from |0...0> and decodes it greedily.
/// Targets come from random circuits of depth uniform in [1, max_target_depth]
/// drawn from one stream seeded with `seed`; the policy for seed index s and
/// target i uses ppo.seed = seed + 1000 s + i.
RlBenchmark run_rl_benchmark(int n_targets, int n_seeds, int n_qubits, int max_target_depth,
                             const PPOConfig& ppo, std::uint64_t seed);

/// seed,target,episode,return,best_fidelity,env_steps
std::string rl_curves_csv(const RlBenchmark& b);

}  // namespace qnom
