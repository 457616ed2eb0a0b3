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

#include "qnom/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>

#include "qnom/error.hpp"
#include "qnom/optimize.hpp"

namespace qnom {

namespace {

void push_action_gate(Circuit& c, const Action& a) { c.add_param_gate(a.kind, a.qubits); }

Circuit empty_layer(int n) {
  Circuit c;
  c.n_qubits = n;
  return c;
}

}  // namespace

const std::vector<GateKind>& default_gate_set() {
  static const std::vector<GateKind> set{GateKind::RX,  GateKind::RY,  GateKind::RZ,
                                         GateKind::RXX, GateKind::RYY, GateKind::RZZ};
  return set;
}

std::vector<Action> action_space(int n_qubits, const std::vector<GateKind>& gate_set) {
  if (n_qubits < 1) throw InvalidArgument("action_space: need at least one qubit");
  std::vector<Action> out;
  for (GateKind k : gate_set) {
    if (gate_arity(k) != 1) continue;
    for (int q = 0; q < n_qubits; ++q) out.push_back({k, {q}});
  }
  for (GateKind k : gate_set) {
    if (gate_arity(k) != 2) continue;
    for (int i = 0; i < n_qubits; ++i) {
      for (int j = i + 1; j < n_qubits; ++j) out.push_back({k, {i, j}});
    }
  }
  for (GateKind k : gate_set) {
    if (gate_arity(k) == 0) throw InvalidArgument("action_space: gate set must hold Pauli rotations");
  }
  return out;
}

void SynthEnv::validate() const {
  if (initial.dim() != target.dim()) throw DimensionMismatch("SynthEnv: initial/target sizes differ");
  if (!(f_t > 0.0 && f_t < 1.0)) throw InvalidArgument("SynthEnv: f_t must lie in (0, 1)");
  if (max_depth < 1) throw InvalidArgument("SynthEnv: max_depth must be positive");
  if (penalty < 0.0) throw InvalidArgument("SynthEnv: negative gate penalty");
  if (step_budget < 1 || polish_budget < 1) throw InvalidArgument("SynthEnv: budgets must be positive");
}

double reward(double f, double f_prev, const SynthEnv& env, int depth) {
  if (f >= env.f_t) return 10.0;
  if (depth >= env.max_depth) return -5.0;
  const double denom = env.f_t - f_prev;
  const double ratio = denom == 0.0 ? 0.0 : (f - f_prev) / denom;
  return std::max(ratio, -1.0) - env.penalty;
}

double layer_fidelity(const SynthEnv& env, const Circuit& layer, const ParamVector& alpha) {
  return 1.0 - transfer_infidelity(layer, alpha, env.initial.amps(), env.target.amps());
}

SynthResult synthesize_greedy(const SynthEnv& env) {
  env.validate();
  const int n = env.n_qubits();
  const auto actions = action_space(n, env.gate_set);
  const CVec& init = env.initial.amps();
  const CVec& tgt = env.target.amps();

  SynthResult res;
  res.layer = empty_layer(n);
  res.fidelity = std::norm(tgt.dot(init));
  constexpr int kPolishCandidates = 3;

  while (res.fidelity < env.f_t && static_cast<int>(res.layer.depth()) < env.max_depth) {
    // The state before the new gate does not change during the 1-D scan.
    CVec before = init;
    apply_gates(res.layer, res.alpha, before, 0, res.layer.depth());

    struct Cand {
      int action;
      double angle;
      double fid;
    };
    std::vector<Cand> cands;
    cands.reserve(actions.size());
    for (std::size_t a = 0; a < actions.size(); ++a) {
      Circuit one = empty_layer(n);
      push_action_gate(one, actions[a]);
      auto loss = [&](double phi) { return transfer_infidelity(one, {phi}, before, tgt); };
      const double phi = minimize_1d(loss, -std::numbers::pi, std::numbers::pi);
      cands.push_back({static_cast<int>(a), phi, 1.0 - loss(phi)});
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.fid > y.fid; });

    SynthResult best;
    best.fidelity = -1.0;
    for (int i = 0; i < kPolishCandidates && i < static_cast<int>(cands.size()); ++i) {
      Circuit c = res.layer;
      push_action_gate(c, actions[cands[i].action]);
      ParamVector th = res.alpha;
      th.push_back(cands[i].angle);
      const auto fit = optimize_transfer(c, th, init, tgt, env.step_budget);
      const double f = 1.0 - fit.c1;
      if (f > best.fidelity) {
        best.layer = c;
        best.alpha = fit.theta;
        best.fidelity = f;
        best.actions = res.actions;
        best.actions.push_back(cands[i].action);
      }
    }
    if (best.fidelity <= res.fidelity + 1e-12) {
      // Stationary point of every one-gate extension: look two gates ahead
      // with the new angles started off zero.
      const int room = env.max_depth - static_cast<int>(res.layer.depth());
      for (std::size_t a = 0; a < actions.size(); ++a) {
        for (std::size_t b = 0; b < (room >= 2 ? actions.size() : 1); ++b) {
          Circuit c = res.layer;
          ParamVector th = res.alpha;
          push_action_gate(c, actions[a]);
          th.push_back(std::numbers::pi / 2);
          if (room >= 2) {
            push_action_gate(c, actions[b]);
            th.push_back(std::numbers::pi / 4);
          }
          const auto fit = optimize_transfer(c, th, init, tgt, env.step_budget);
          const double f = 1.0 - fit.c1;
          if (f > best.fidelity) {
            best.layer = c;
            best.alpha = fit.theta;
            best.fidelity = f;
            best.actions = res.actions;
            best.actions.push_back(static_cast<int>(a));
            if (room >= 2) best.actions.push_back(static_cast<int>(b));
          }
        }
      }
    }
    if (best.fidelity <= res.fidelity + 1e-12) break;  // no gate helps any more
    res = std::move(best);
  }
  if (res.layer.depth() > 0) {
    const auto fit = optimize_transfer(res.layer, res.alpha, init, tgt, env.polish_budget);
    if (1.0 - fit.c1 >= res.fidelity) {
      res.alpha = fit.theta;
      res.fidelity = 1.0 - fit.c1;
    }
  }
  res.fidelity = layer_fidelity(env, res.layer, res.alpha);
  return res;
}

LayerEnv::LayerEnv(const SynthEnv& env)
    : env_(env), memo_(std::make_shared<std::map<std::vector<int>, Outcome>>()) {
  env_.validate();
  actions_ = action_space(env_.n_qubits(), env_.gate_set);
  initial_fidelity_ = std::norm(env_.target.amps().dot(env_.initial.amps()));
  reset();
}

void LayerEnv::reset() {
  seq_.clear();
  params_.clear();
  fidelity_ = initial_fidelity_;
  done_ = fidelity_ >= env_.f_t;
}

Circuit LayerEnv::layer() const {
  Circuit c = empty_layer(env_.n_qubits());
  for (int a : seq_) push_action_gate(c, actions_[a]);
  return c;
}

CVec LayerEnv::current_state() const {
  CVec v = env_.initial.amps();
  const Circuit c = layer();
  apply_gates(c, params_, v, 0, c.depth());
  return v;
}

LayerEnv::StepResult LayerEnv::step(int action) {
  if (action < 0 || action >= static_cast<int>(actions_.size())) {
    throw InvalidArgument("LayerEnv::step: action out of range");
  }
  if (done_) throw InvalidArgument("LayerEnv::step: episode already finished");
  ++steps_;
  seq_.push_back(action);
  auto it = memo_->find(seq_);
  if (it == memo_->end()) {
    const Circuit c = layer();
    ParamVector th = params_;
    th.push_back(0.0);  // new gate starts at the identity
    const auto fit = optimize_transfer(c, th, env_.initial.amps(), env_.target.amps(), env_.step_budget);
    it = memo_->emplace(seq_, Outcome{fit.theta, 1.0 - fit.c1}).first;
  }
  const double f_prev = fidelity_;
  params_ = it->second.params;
  fidelity_ = it->second.fidelity;
  StepResult r;
  r.fidelity = fidelity_;
  r.reward = reward(fidelity_, f_prev, env_, depth());
  done_ = fidelity_ >= env_.f_t || depth() >= env_.max_depth;
  r.done = done_;
  return r;
}

RVec state_features(const CVec& current, const CVec& target) {
  if (current.size() != target.size()) throw DimensionMismatch("state_features: size mismatch");
  const Index d = current.size();
  RVec x(4 * d);
  auto put = [&](const CVec& v, Index off) {
    Index imax = 0;
    for (Index i = 1; i < d; ++i) {
      if (std::abs(v(i)) > std::abs(v(imax)) + 1e-12) imax = i;
    }
    const double m = std::abs(v(imax));
    const Complex g = m > 0.0 ? std::conj(v(imax)) / m : Complex(1.0, 0.0);
    for (Index i = 0; i < d; ++i) {
      const Complex a = g * v(i);
      x(off + i) = a.real();
      x(off + d + i) = a.imag();
    }
  };
  put(current, 0);
  put(target, 2 * d);
  return x;
}

double decile_return_gain(const std::vector<EpisodeRecord>& episodes) {
  const std::size_t n = episodes.size();
  if (n < 10) throw InvalidArgument("decile_return_gain: need at least 10 episodes");
  const std::size_t k = n / 10;
  double first = 0.0, last = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    first += episodes[i].ret;
    last += episodes[n - k + i].ret;
  }
  return (last - first) / static_cast<double>(k);
}

void write_training_curve(const std::string& path, const std::vector<EpisodeRecord>& episodes,
                          const std::string& tag) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("write_training_curve: cannot open " + path);
  out.precision(17);
  out << (tag.empty() ? "" : "tag,") << "episode,return,best_fidelity,env_steps\n";
  for (const auto& e : episodes) {
    if (!tag.empty()) out << tag << ',';
    out << e.episode << ',' << e.ret << ',' << e.best_fidelity << ',' << e.env_steps << '\n';
  }
}

RandomTarget random_circuit_target(int n_qubits, int depth, std::mt19937_64& rng,
                                   const std::vector<GateKind>& gate_set) {
  const auto actions = action_space(n_qubits, gate_set);
  std::uniform_int_distribution<std::size_t> pick(0, actions.size() - 1);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  RandomTarget t;
  // Redraw targets that |0...0> already reaches (e.g. a lone RZ).
  for (int attempt = 0; attempt < 1000; ++attempt) {
    t.circuit = empty_layer(n_qubits);
    t.theta.clear();
    for (int i = 0; i < depth; ++i) {
      push_action_gate(t.circuit, actions[pick(rng)]);
      t.theta.push_back(angle(rng));
    }
    t.state = EncodedState(circuit_state(t.circuit, t.theta), Index{1} << n_qubits);
    if (std::norm(t.state.amps()(0)) < kTrivialTargetFidelity) break;
  }
  return t;
}

}  // namespace qnom
