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

// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qnom/cost.hpp"
#include "qnom/error.hpp"
#include "qnom/experiments.hpp"
#include "qnom/nom.hpp"
#include "qnom/qgrad.hpp"
#include "qnom/report.hpp"
#include "qnom/synth.hpp"
#include "qnom/vanish.hpp"
#include "test_util.hpp"

using namespace qnom;
using qnom::testing::quartic_oracle;
using qnom::testing::random_point;

namespace {

// Tolerances and limits.
constexpr double kPolyIdentityTol = 1e-9;
constexpr double kPolyIdentitySeconds = 1.0;
constexpr double kGradRelTol = 1e-5;
constexpr double kGradScaleTol = 1e-9;
constexpr double kLcuFidelityTol = 1e-10;
constexpr double kLcuProbTol = 1e-10;
constexpr double kMaxcutFloor = 3.95;
constexpr double kMaxcutSeconds = 60.0;
constexpr double kStationaryGradTol = 1e-6;
constexpr double kRingBound = 3.0;
constexpr double kRingBoundSlack = 1e-9;
constexpr double kEscapeTarget = 3.9;
constexpr double kPolyGradTol = 1e-2;
constexpr double kPolyAssignTol = 1e-2;
constexpr double kConcentrationSeconds = 30.0;
constexpr double kBpAgreeTol = 1e-6;
constexpr double kBpNonVanishing = 1e-3;
constexpr double kRlSuccessRate = 0.7;
constexpr long kRlStepBudget = 30000;
constexpr double kDisturbFloor = 3.9;
constexpr double kDampingSlack = 1e-3;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v, int prec = 6) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Central differences in Re and Im: df/dconj(v_i) = (df/dx_i + i df/dy_i) / 2.
CVec conj_derivative_oracle(const CostSpec& spec, const CVec& v, double h = 1e-6) {
  CVec g(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    CVec a = v, b = v;
    a(i) += h;
    b(i) -= h;
    const double dx = (eval_cost(spec, a) - eval_cost(spec, b)) / (2 * h);
    a = v;
    b = v;
    a(i) += Complex(0, h);
    b(i) -= Complex(0, h);
    const double dy = (eval_cost(spec, a) - eval_cost(spec, b)) / (2 * h);
    g(i) = 0.5 * Complex(dx, dy);
  }
  return g;
}

CostSpec ring_problem() { return CostSpec::from_pauli_sum(maxcut_hamiltonian(Graph::cycle(4))); }

Outcome polynomial_identity() {
  const auto spec = quartic_xyz_cost();
  std::mt19937_64 rng(1);
  std::vector<VariableVector> pts;
  for (int i = 0; i < 1000; ++i) pts.push_back(random_point(rng));
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0, worst_oracle = 0.0;
  for (const auto& z : pts) {
    const double f = eval_cost(spec, z);
    worst = std::max(worst, std::abs(f - eval_cost_expanded(z)));
    worst_oracle = std::max(worst_oracle, std::abs(f - quartic_oracle(z)));
  }
  const double secs = seconds_since(t0);
  return {worst <= kPolyIdentityTol && worst_oracle <= kPolyIdentityTol && secs < kPolyIdentitySeconds,
          "max |diff| " + num(worst) + " (independent form " + num(worst_oracle) + "), " + num(secs, 3) + " s"};
}

Outcome gradient_correctness() {
  const auto spec = quartic_xyz_cost();
  std::mt19937_64 rng(2);
  double worst_rel = 0.0, worst_scale = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto z = random_point(rng);
    const CVec v = z.values();
    const CVec want = conj_derivative_oracle(spec, v);
    const CMat dr = effective_gradient_raw(spec, v);
    const CVec got = dr * v;
    for (Index i = 0; i < v.size(); ++i) {
      worst_rel = std::max(worst_rel, std::abs(got(i) - want(i)) / std::max(1.0, std::abs(want(i))));
    }
    const auto s = encode(z);
    const double factor = std::pow(s.c0(), 2 * (spec.p() - 1));
    const CMat dn = effective_gradient(spec, s).D;
    worst_scale = std::max(worst_scale, (dn - factor * dr).cwiseAbs().maxCoeff() /
                                            std::max(1.0, (factor * dr).cwiseAbs().maxCoeff()));
  }
  return {worst_rel <= kGradRelTol && worst_scale <= kGradScaleTol,
          "worst relative error " + num(worst_rel) + ", normalized vs rescaled " + num(worst_scale)};
}

Outcome linear_reduction() {
  std::mt19937_64 rng(3);
  bool exact = true;
  for (int q = 1; q <= 3; ++q) {
    const CMat F = qnom::testing::random_hermitian(Index{1} << q, rng);
    const CostSpec spec(F, 1, CostMode::RawState);
    const auto s = qnom::testing::random_state(q, rng);
    exact = exact && effective_gradient(spec, s).D == F;
    const CostSpec affine(F, 1, CostMode::Affine);
    exact = exact && effective_gradient(affine, s).D == F;
  }
  return {exact, exact ? "entrywise equal for 1..3 qubits" : "mismatch"};
}

Outcome lcu_equivalence() {
  const auto spec = quartic_xyz_cost();
  std::mt19937_64 rng(4);
  const double xis[] = {0.05, 0.2, 0.5};
  double worst_fid = 1.0, worst_prob = 0.0;
  int done = 0;
  for (int i = 0; done < 50 && i < 5000; ++i) {
    const auto s = encode(random_point(rng, 3, 1.5));
    const double xi = xis[done % 3];
    const StepSign sign = done % 2 ? StepSign::Ascent : StepSign::Descent;
    LcuOutcome out;
    try {
      out = lcu_step_simulate(spec, s, xi, sign);
    } catch (const SingularCoefficient&) {
      continue;
    }
    const auto D = effective_gradient(spec, s);
    const auto dense = gradient_step(s, D, xi, sign);
    worst_fid = std::min(worst_fid, std::norm(dense.amps().dot(out.state.amps())));
    worst_prob = std::max(worst_prob,
                          std::abs(out.success_prob - lcu_expected_success(D.D, s.logical(), xi, out.lambda, sign)));
    ++done;
  }
  return {done == 50 && worst_fid >= 1.0 - kLcuFidelityTol && worst_prob <= kLcuProbTol,
          std::to_string(done) + " configurations, worst fidelity " + num(worst_fid, 17) + ", probability error " +
              num(worst_prob)};
}

Outcome maxcut_convergence() {
  NOMConfig cfg;
  cfg.xi = 0.2;
  cfg.epsilon0 = 0.002;
  cfg.max_iter = 100;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = run_maxcut_experiment(cfg, Graph::cycle(4));
  const double secs = seconds_since(t0);
  bool ok = rep.runs.size() == 8;
  double lowest = 1e300;
  for (const auto& r : rep.runs) {
    lowest = std::min(lowest, final_cost(r.trace));
    ok = ok && final_cost(r.trace) >= kMaxcutFloor && r.trace.records.size() <= 100 &&
         r.extras.at("optimum") == 4.0;
  }
  return {ok && secs < kMaxcutSeconds, std::to_string(rep.runs.size()) + " runs (4 ansatze x ideal/re-encode), lowest final " +
                                           num(lowest) + ", " + num(secs, 3) + " s"};
}

Outcome gradient_vanishing_escape() {
  const Graph g = Graph::cycle(4);
  const auto problem = ring_problem();
  const Circuit c = maxcut_initial_circuit(AnsatzId::QAOA1, g);
  const auto fit = train_to_stationarity(c, maxcut_initial_params(c), problem.F());
  NOMConfig cfg;
  cfg.sign = StepSign::Ascent;
  const EncodedState s(circuit_state(c, fit.theta), 16);
  const auto sp = gradient_step(s, effective_gradient(problem, s), cfg.xi, cfg.sign);
  const auto rep = vanishing_detector(c, fit.theta, problem, sp, cfg.epsilon0);
  const auto tr = nom_run(problem, c, fit.theta, cfg);
  const double after = final_cost(tr);
  const bool ok = rep.grad_theta_norm <= kStationaryGradTol && fit.cost <= kRingBound + kRingBoundSlack &&
                  rep.indicator > cfg.epsilon0 && rep.gradient_vanishing && after > kEscapeTarget;
  return {ok, "||grad_theta|| " + num(rep.grad_theta_norm) + ", cost " + num(fit.cost, 12) + ", indicator " +
                  num(rep.indicator) + ", after NOM " + num(after)};
}

Outcome polynomial_experiment() {
  NOMConfig cfg;
  cfg.mode = EncodeMode::Ideal;
  cfg.epsilon = 1e-8;
  const auto oracle = plane_minima_oracle();
  const auto rep = run_poly_experiment(cfg);
  bool ok = oracle.size() == 4 && rep.runs.size() == 12;
  std::set<int> hit;
  double worst_grad = 0.0, worst_dist = 0.0;
  for (const auto& r : rep.runs) {
    worst_grad = std::max(worst_grad, r.extras.at("grad_norm"));
    worst_dist = std::max(worst_dist, r.extras.at("min_distance"));
    hit.insert(static_cast<int>(r.extras.at("nearest_min")));
  }
  ok = ok && worst_grad <= kPolyGradTol && worst_dist <= kPolyAssignTol && hit.size() == 4;
  return {ok, std::to_string(rep.runs.size()) + " points, oracle minima " + std::to_string(oracle.size()) +
                  ", distinct minima reached " + std::to_string(hit.size()) + ", worst gradient " + num(worst_grad) +
                  ", worst distance " + num(worst_dist)};
}

Outcome concentration_bounds() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = concentration_grid({16, 64, 256}, {0.2, 0.4}, {1, 8}, 10000, 8);
  const double secs = seconds_since(t0);
  int bad = 0;
  for (const auto& r : rows) bad += r.empirical > r.bound + 3.0 * r.sigma;
  return {bad == 0 && rows.size() == 18 && secs < kConcentrationSeconds,
          std::to_string(rows.size()) + " cells, " + std::to_string(bad) + " violations, " + num(secs, 3) + " s"};
}

Outcome barren_plateau_formula() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto tgt = random_circuit_target(3, 1 + t % 6, rng);
    ParamVector alpha(static_cast<std::size_t>(tgt.circuit.n_params));
    for (auto& a : alpha) a = ang(rng);
    const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(tgt.circuit.n_params));
    const auto z = qnom::testing::random_state(3, rng);
    const auto zp = qnom::testing::random_state(3, rng);
    const auto g = bp_gradient_check(tgt.circuit, alpha, k, z, zp);
    worst = std::max(worst, std::abs(g.analytic - g.finite_diff));
  }
  Circuit id;
  id.n_qubits = 3;
  for (const auto& a : action_space(3)) id.add_param_gate(a.kind, a.qubits);
  const ParamVector zero(static_cast<std::size_t>(id.n_params), 0.0);
  const auto z = EncodedState::zero(3);
  const auto zp = qnom::testing::random_state(3, rng);
  double largest = 0.0;
  for (int k = 0; k < id.n_params; ++k) largest = std::max(largest, std::abs(bp_gradient_check(id, zero, k, z, zp).analytic));
  return {worst <= kBpAgreeTol && largest > kBpNonVanishing,
          "worst |analytic - fd| " + num(worst) + ", identity-layer max |dc2| " + num(largest)};
}

Outcome rl_synthesizer() {
  PPOConfig ppo;
  ppo.total_steps = kRlStepBudget;
  const auto t0 = std::chrono::steady_clock::now();
  const auto b = run_rl_benchmark(20, 5, 4, 5, ppo, 0);
  bool gains = true;
  std::string gs;
  for (double g : b.mean_gain) {
    gains = gains && g > 0.0;
    gs += (gs.empty() ? "" : "/") + num(g, 3);
  }
  int solved = 0;
  for (const auto& r : b.runs) solved += r.solved;
  return {b.success_rate >= kRlSuccessRate && b.within_budget && gains,
          std::to_string(solved) + "/" + std::to_string(b.runs.size()) + " solved, decile gain per seed " + gs + ", " +
              num(seconds_since(t0), 4) + " s"};
}

SweepReport disturbance(int runs, const std::vector<double>& mags, std::uint64_t seed) {
  const auto problem = ring_problem();
  const Circuit c = maxcut_initial_circuit(AnsatzId::QAOA1, Graph::cycle(4));
  const auto init = train_to_stationarity(c, maxcut_initial_params(c), problem.F());
  NOMConfig cfg;
  cfg.sign = StepSign::Ascent;
  cfg.seed = seed;
  return disturbance_sweep(cfg, problem, c, init.theta, mags, runs);
}

Outcome disturbance_robustness() {
  const auto sr = disturbance(50, {0.01, 0.03, 0.05}, 0);
  bool ok = sr.points.size() == 3 && sr.points[0].mean_final_cost >= kDisturbFloor;
  std::string d;
  for (std::size_t i = 0; i < sr.points.size(); ++i) {
    if (i > 0) ok = ok && sr.points[i].mean_final_cost <= sr.points[i - 1].mean_final_cost;
    d += (d.empty() ? "" : ", ") + num(sr.points[i].magnitude, 3) + " -> " + num(sr.points[i].mean_final_cost);
  }
  return {ok, "mean final cost " + d};
}

Outcome perturbation_damping() {
  const auto spec = quartic_xyz_cost();
  const auto z = VariableVector::from_variables((CVec(3) << 0.98, 0.01, 0.0).finished());
  const auto probe = perturbation_damping_demo(spec, z, 1e-4, {}, true);
  const double limit = 2.0 / probe.lambda_max;
  std::vector<double> grid;
  for (double f : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95}) grid.push_back(f * limit);
  const auto rep = perturbation_damping_demo(spec, z, 1e-4, grid, true);
  bool ok = probe.lambda_max > 0.0 && rep.rows.size() == grid.size();
  double worst = -1e300;
  for (const auto& r : rep.rows) {
    ok = ok && r.xi > 0.0 && r.xi < limit && r.ratio <= r.contraction + kDampingSlack;
    worst = std::max(worst, r.ratio - r.contraction);
  }
  return {ok, "lambda_max " + num(probe.lambda_max) + ", " + std::to_string(rep.rows.size()) +
                  " step sizes in (0, 2/lambda_max), worst ratio - contraction " + num(worst)};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome reproducibility() {
  const auto dir = std::filesystem::temp_directory_path() / "qnom_acceptance_repro";
  std::filesystem::create_directories(dir);
  PPOConfig ppo;
  ppo.total_steps = 2000;
  const std::string rl_a = rl_curves_csv(run_rl_benchmark(2, 2, 3, 4, ppo, 17));
  const std::string rl_b = rl_curves_csv(run_rl_benchmark(2, 2, 3, 4, ppo, 17));
  const std::string d_a = report_to_csv(disturbance(3, {0.03}, 5).report);
  const std::string d_b = report_to_csv(disturbance(3, {0.03}, 5).report);
  write_grid_csv((dir / "a.csv").string(), concentration_grid({16, 64}, {0.2}, {1, 8}, 2000, 3));
  write_grid_csv((dir / "b.csv").string(), concentration_grid({16, 64}, {0.2}, {1, 8}, 2000, 3));
  const std::string m_a = read_file(dir / "a.csv"), m_b = read_file(dir / "b.csv");
  const bool rl = !rl_a.empty() && rl_a == rl_b;
  const bool dist = !d_a.empty() && d_a == d_b;
  const bool mc = !m_a.empty() && m_a == m_b;
  auto yn = [](bool b) { return b ? "identical" : "DIFFERENT"; };
  return {rl && dist && mc, std::string("RL curves ") + yn(rl) + ", disturbance traces " + yn(dist) +
                                ", Monte Carlo grid " + yn(mc)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"polynomial_identity", polynomial_identity},
      {"gradient_correctness", gradient_correctness},
      {"linear_cost_reduction", linear_reduction},
      {"lcu_dense_equivalence", lcu_equivalence},
      {"maxcut_convergence", maxcut_convergence},
      {"gradient_vanishing_escape", gradient_vanishing_escape},
      {"polynomial_experiment", polynomial_experiment},
      {"concentration_bounds", concentration_bounds},
      {"barren_plateau_formula", barren_plateau_formula},
      {"rl_synthesizer", rl_synthesizer},
      {"disturbance_robustness", disturbance_robustness},
      {"perturbation_damping", perturbation_damping},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
