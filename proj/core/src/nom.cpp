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

#include "qnom/nom.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qnom/error.hpp"

namespace qnom {

std::string to_string(EncodeMode m) { return m == EncodeMode::Ideal ? "ideal" : "reencode"; }
std::string to_string(SynthMode m) { return m == SynthMode::Greedy ? "greedy" : "rl"; }
std::string to_string(TerminationReason r) {
  return r == TerminationReason::IndicatorBelowEpsilon ? "IndicatorBelowEpsilon" : "MaxIter";
}

EncodeMode parse_encode_mode(const std::string& s) {
  if (s == "ideal") return EncodeMode::Ideal;
  if (s == "reencode") return EncodeMode::Reencode;
  throw InvalidArgument("unknown mode '" + s + "' (expected ideal|reencode)");
}

SynthMode parse_synth_mode(const std::string& s) {
  if (s == "greedy") return SynthMode::Greedy;
  if (s == "rl") return SynthMode::RL;
  throw InvalidArgument("unknown synthesizer '" + s + "' (expected greedy|rl)");
}

void NOMConfig::validate() const {
  if (!(xi > 0.0)) throw InvalidArgument("NOMConfig: xi must be positive");
  if (!(epsilon0 > 0.0 && epsilon0 < 1.0)) throw InvalidArgument("NOMConfig: epsilon0 must lie in (0, 1)");
  if (!(epsilon >= 0.0)) throw InvalidArgument("NOMConfig: epsilon must be non-negative");
  if (max_iter < 1) throw InvalidArgument("NOMConfig: max_iter must be at least 1");
  if (!(disturbance >= 0.0)) throw InvalidArgument("NOMConfig: disturbance must be non-negative");
  if (layer_policy.stagnation_window < 1) throw InvalidArgument("NOMConfig: stagnation window must be positive");
}

EncodedState problem_state(const CostSpec& problem, const CVec& amps) {
  if (amps.size() < problem.sub_dim()) throw DimensionMismatch("problem_state: register too small");
  return EncodedState(amps / amps.norm(), problem.sub_dim());
}

double problem_cost(const CostSpec& problem, const EncodedState& s) { return state_cost(problem, s); }

EncodedState inject_disturbance(const EncodedState& s, double magnitude, std::mt19937_64& rng) {
  if (!(magnitude >= 0.0)) throw InvalidArgument("inject_disturbance: magnitude must be non-negative");
  if (magnitude == 0.0) return s;
  std::normal_distribution<double> normal(0.0, 1.0);
  CVec noise = CVec::Zero(s.dim());
  for (Index i = 0; i < s.logical_dim(); ++i) noise(i) = Complex(normal(rng), normal(rng));
  noise *= magnitude / noise.norm();
  const CVec v = s.amps() + noise;
  return EncodedState(v / v.norm(), s.logical_dim());
}

ReencodeResult reencode(const Circuit& circuit, const ParamVector& theta_prev, const EncodedState& target,
                        const NOMConfig& cfg, const std::vector<double>& c1_history) {
  ReencodeResult out;
  const auto fit = optimize_params(circuit, theta_prev, target, cfg.opt_budget, cfg.seed);
  out.circuit = circuit;
  out.theta = fit.theta;
  out.c1_after_opt = fit.c1;
  out.c_final = fit.c1;
  if (fit.c1 <= cfg.epsilon0) return out;

  const int w = cfg.layer_policy.stagnation_window;
  const bool stagnant = static_cast<int>(c1_history.size()) >= w &&
                        fit.c1 >= c1_history[c1_history.size() - static_cast<std::size_t>(w)];
  const bool trigger = fit.c1 > cfg.layer_policy.trigger_ratio * cfg.epsilon0 || stagnant;
  if (!trigger) return out;

  SynthEnv env;
  const CVec start = circuit_state(circuit, fit.theta);
  env.initial = EncodedState(start / start.norm(), start.size());
  env.target = EncodedState(target.amps(), target.dim());
  env.max_depth = cfg.synth_max_depth;
  env.f_t = 1.0 - cfg.epsilon0;
  const SynthResult layer =
      cfg.synth_mode == SynthMode::Greedy ? synthesize_greedy(env) : synthesize_rl(ppo_train(env, cfg.ppo), env);
  if (layer.layer.depth() == 0) return out;

  Circuit joined = circuit;
  joined.append(layer.layer);
  ParamVector th = fit.theta;
  th.insert(th.end(), layer.alpha.begin(), layer.alpha.end());
  const auto polished = optimize_params(joined, th, target, cfg.opt_budget, cfg.seed);
  if (polished.c1 < out.c_final) {
    out.circuit = std::move(joined);
    out.theta = polished.theta;
    out.c_final = polished.c1;
    out.layer_added = true;
  }
  return out;
}

NOMTrace nom_run(const CostSpec& problem, const Circuit& circuit, const ParamVector& theta,
                 const NOMConfig& cfg) {
  cfg.validate();
  circuit.validate();
  const auto t0 = std::chrono::steady_clock::now();
  if ((Index{1} << circuit.n_qubits) < problem.sub_dim()) {
    throw DimensionMismatch("nom_run: circuit register smaller than the problem");
  }

  NOMTrace tr;
  tr.final_circuit = circuit;
  tr.final_params = theta;
  EncodedState s = problem_state(problem, circuit_state(circuit, theta));
  tr.initial_cost = problem_cost(problem, s);
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> c1_history;

  for (int t = 1; t <= cfg.max_iter; ++t) {
    IterationRecord rec;
    rec.t = t;
    EncodedState sp;
    try {
      sp = gradient_step(s, effective_gradient(problem, s), cfg.xi, cfg.sign);
    } catch (const DegenerateStep& e) {
      throw DegenerateStep("iteration " + std::to_string(t) + ": " + e.what());
    }
    rec.indicator = std::clamp(1.0 - std::norm(sp.amps().dot(s.amps())), 0.0, 1.0);

    if (cfg.disturbance > 0.0) sp = inject_disturbance(sp, cfg.disturbance, rng);

    if (cfg.mode == EncodeMode::Ideal) {
      s = sp;
      rec.c1_after_opt = 0.0;
      rec.fidelity_to_target = 1.0;
    } else {
      const EncodedState target(sp.amps(), sp.dim());
      auto re = reencode(tr.final_circuit, tr.final_params, target, cfg, c1_history);
      c1_history.push_back(re.c1_after_opt);
      rec.c1_after_opt = re.c1_after_opt;
      rec.layer_added = re.layer_added;
      rec.fidelity_to_target = 1.0 - re.c_final;
      tr.final_circuit = std::move(re.circuit);
      tr.final_params = std::move(re.theta);
      s = problem_state(problem, circuit_state(tr.final_circuit, tr.final_params));
    }
    rec.circuit_depth = static_cast<int>(tr.final_circuit.depth());
    try {
      rec.cost = problem_cost(problem, s);
    } catch (const VanishingReferenceAmplitude& e) {
      throw VanishingReferenceAmplitude("iteration " + std::to_string(t) + ": " + e.what());
    }
    tr.records.push_back(rec);
    if (rec.indicator < cfg.epsilon) {
      tr.termination_reason = TerminationReason::IndicatorBelowEpsilon;
      break;
    }
  }
  tr.final_state = s;
  tr.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return tr;
}

VanishingReport vanishing_detector(const Circuit& circuit, const ParamVector& theta, const CostSpec& problem,
                                   const EncodedState& s_prime, double epsilon0) {
  VanishingReport r;
  if (problem.p() == 1 && problem.F().rows() == (Index{1} << circuit.n_qubits)) {
    const auto g = ansatz_gradient(circuit, theta, problem.F());
    double acc = 0.0;
    for (double v : g) acc += v * v;
    r.grad_theta_norm = std::sqrt(acc);
  } else {
    constexpr double h = 1e-5;
    ParamVector t = theta;
    double acc = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      t[k] = theta[k] + h;
      const double fp = problem_cost(problem, problem_state(problem, circuit_state(circuit, t)));
      t[k] = theta[k] - h;
      const double fm = problem_cost(problem, problem_state(problem, circuit_state(circuit, t)));
      t[k] = theta[k];
      acc += std::pow((fp - fm) / (2.0 * h), 2);
    }
    r.grad_theta_norm = std::sqrt(acc);
  }
  r.indicator = fidelity_indicator(circuit, theta, s_prime);
  r.gradient_vanishing = r.grad_theta_norm <= kVanishingGradTol && r.indicator > epsilon0;
  return r;
}

CVec affine_gradient(const CostSpec& spec, const VariableVector& z) {
  const CMat D = effective_gradient_raw(spec, z.values());
  return (D * z.values()).tail(z.d());
}

VariableVector zspace_step(const CostSpec& spec, const VariableVector& z, double xi) {
  return VariableVector::from_variables(z.variables() - xi * affine_gradient(spec, z));
}

std::string trace_to_csv(const NOMTrace& trace) {
  std::ostringstream os;
  os.precision(17);
  os << "t,cost,indicator,c1_after_opt,layer_added,circuit_depth,fidelity_to_target\n";
  for (const auto& r : trace.records) {
    os << r.t << ',' << r.cost << ',' << r.indicator << ',' << r.c1_after_opt << ',' << (r.layer_added ? 1 : 0)
       << ',' << r.circuit_depth << ',' << r.fidelity_to_target << '\n';
  }
  return os.str();
}

void write_trace_csv(const std::string& path, const NOMTrace& trace) {
  std::ofstream out(path);
  if (!out) throw IoError("write_trace_csv: cannot open " + path);
  out << trace_to_csv(trace);
}

}  // namespace qnom
