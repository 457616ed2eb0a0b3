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

#include <benchmark/benchmark.h>

#include <random>

#include "qnom/cost.hpp"
#include "qnom/experiments.hpp"
#include "qnom/pqc.hpp"
#include "qnom/qgrad.hpp"
#include "qnom/synth.hpp"

using namespace qnom;

namespace {
VariableVector point(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVec v(3);
  for (int i = 0; i < 3; ++i) v(i) = Complex(g(rng), g(rng));
  return VariableVector::from_variables(v);
}
}  // namespace

static void BM_EvalCostQuartic(benchmark::State& st) {
  const auto spec = quartic_xyz_cost();
  std::mt19937_64 rng(1);
  const auto z = point(rng);
  for (auto _ : st) benchmark::DoNotOptimize(eval_cost(spec, z));
}
BENCHMARK(BM_EvalCostQuartic);

static void BM_EffectiveGradient(benchmark::State& st) {
  const auto spec = quartic_xyz_cost();
  std::mt19937_64 rng(2);
  const auto s = encode(point(rng));
  for (auto _ : st) benchmark::DoNotOptimize(effective_gradient(spec, s).D.data());
}
BENCHMARK(BM_EffectiveGradient);

static void BM_LcuStep(benchmark::State& st) {
  const auto spec = quartic_xyz_cost();
  std::mt19937_64 rng(3);
  const auto s = encode(point(rng));
  for (auto _ : st) benchmark::DoNotOptimize(lcu_step_simulate(spec, s, 0.2).success_prob);
}
BENCHMARK(BM_LcuStep);

static void BM_CircuitState(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  Circuit c;
  c.n_qubits = n;
  for (const auto& a : action_space(n)) c.add_param_gate(a.kind, a.qubits);
  const ParamVector th(static_cast<std::size_t>(c.n_params), 0.3);
  for (auto _ : st) benchmark::DoNotOptimize(circuit_state(c, th).data());
  st.SetComplexityN(n);
}
BENCHMARK(BM_CircuitState)->DenseRange(2, 8, 2);

static void BM_AnsatzGradient(benchmark::State& st) {
  const Graph g = Graph::cycle(4);
  const Circuit c = maxcut_initial_circuit(AnsatzId::HWE_RY, g);
  const CMat obs = pauli_matrix(maxcut_hamiltonian(g), 4);
  const ParamVector th{0.1, 0.2, 0.3, 0.4, 0.5};
  for (auto _ : st) benchmark::DoNotOptimize(ansatz_gradient(c, th, obs).data());
}
BENCHMARK(BM_AnsatzGradient);

static void BM_GreedySynthesis(benchmark::State& st) {
  std::mt19937_64 rng(4);
  const auto tgt = random_circuit_target(3, 3, rng);
  SynthEnv env;
  env.initial = EncodedState::zero(3);
  env.target = tgt.state;
  for (auto _ : st) benchmark::DoNotOptimize(synthesize_greedy(env).fidelity);
}
BENCHMARK(BM_GreedySynthesis)->Unit(benchmark::kMillisecond);

static void BM_NomMaxcutIdeal(benchmark::State& st) {
  const Graph g = Graph::cycle(4);
  const auto problem = CostSpec::from_pauli_sum(maxcut_hamiltonian(g));
  const Circuit c = maxcut_initial_circuit(AnsatzId::QAOA1, g);
  NOMConfig cfg;
  cfg.mode = EncodeMode::Ideal;
  cfg.sign = StepSign::Ascent;
  for (auto _ : st) benchmark::DoNotOptimize(nom_run(problem, c, {0.2, 0.25}, cfg).records.size());
}
BENCHMARK(BM_NomMaxcutIdeal)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
