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

#include <algorithm>
#include <cmath>
#include <random>

#include "qnom/error.hpp"
#include "qnom/synth.hpp"

namespace qnom {

namespace {

RVec softmax(const RVec& logits) {
  const double m = logits.maxCoeff();
  RVec p = (logits.array() - m).exp().matrix();
  return p / p.sum();
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int sample_categorical(const RVec& p, std::mt19937_64& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    acc += p(i);
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(p.size() - 1);
}

int argmax(const RVec& v) {
  Eigen::Index i = 0;
  v.maxCoeff(&i);
  return static_cast<int>(i);
}

struct Sample {
  RVec obs;
  int action;
  double logp;
  double value;
  double reward;
  bool done;
};

}  // namespace

void PPOConfig::validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgument("PPOConfig: gamma must lie in (0, 1]");
  if (!(clip_range > 0.0)) throw InvalidArgument("PPOConfig: clip_range must be positive");
  if (n_epochs < 1 || rollout_steps < 1 || minibatch < 1) throw InvalidArgument("PPOConfig: bad batch sizes");
  if (total_steps < 1) throw InvalidArgument("PPOConfig: budget must be positive");
  if (!(learning_rate > 0.0)) throw InvalidArgument("PPOConfig: learning rate must be positive");
  if (!(ent_coef >= 0.0)) throw InvalidArgument("PPOConfig: ent_coef must be non-negative");
}

int PolicyNet::greedy_action(const CVec& current, const CVec& target) const {
  return argmax(net_.forward(state_features(current, target)).logits);
}

SynthResult synthesize_rl(const PolicyNet& policy, const SynthEnv& env) {
  LayerEnv le(env);
  while (!le.done()) le.step(policy.greedy_action(le.current_state(), env.target.amps()));
  SynthResult res;
  res.layer = le.layer();
  res.alpha = le.params();
  if (res.layer.depth() > 0) {
    const auto fit = optimize_transfer(res.layer, res.alpha, env.initial.amps(), env.target.amps(),
                                       env.polish_budget);
    res.alpha = fit.theta;
  }
  res.fidelity = layer_fidelity(env, res.layer, res.alpha);
  const auto acts = action_space(env.n_qubits(), env.gate_set);
  for (const auto& g : res.layer.gates) {
    res.actions.push_back(static_cast<int>(
        std::find(acts.begin(), acts.end(), Action{g.kind, g.qubits}) - acts.begin()));
  }
  return res;
}

PolicyNet ppo_train(const SynthEnv& env, const PPOConfig& cfg, TrainLog* log) {
  cfg.validate();
  LayerEnv le(env);
  const CVec& tgt = env.target.amps();
  const int n_act = static_cast<int>(le.actions().size());
  const int n_in = static_cast<int>(4 * env.target.dim());
  PolicyNet policy(ActorCritic(n_in, cfg.hidden_sizes, n_act, cfg.seed));
  ActorCritic& net = policy.net();
  Adam adam(cfg.learning_rate);
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

  TrainLog local;
  TrainLog& L = log ? *log : local;
  L = TrainLog{};

  long train_steps = 0;
  double ep_ret = 0.0, ep_best = le.fidelity();
  long episode = 0;
  le.reset();

  // Keep room for one greedy probe and the final decoding so the total never
  // exceeds total_steps.
  const long reserve = 2L * env.max_depth;
  auto budget_left = [&] { return L.env_steps + reserve < cfg.total_steps; };

  while (budget_left()) {
    std::vector<Sample> buf;
    buf.reserve(cfg.rollout_steps);
    for (int t = 0; t < cfg.rollout_steps && budget_left(); ++t) {
      if (le.done()) {  // zero-distance target: nothing to learn in this state
        le.reset();
        if (le.done()) break;
      }
      Sample s;
      s.obs = state_features(le.current_state(), tgt);
      const auto tr = net.forward(s.obs);
      const RVec p = softmax(tr.logits);
      s.action = sample_categorical(p, rng);
      s.logp = std::log(std::max(p(s.action), 1e-300));
      s.value = tr.value;
      const auto r = le.step(s.action);
      ++train_steps;
      ++L.env_steps;
      s.reward = r.reward;
      s.done = r.done;
      ep_ret += r.reward;
      ep_best = std::max(ep_best, r.fidelity);
      buf.push_back(std::move(s));
      if (r.done) {
        L.episodes.push_back({episode++, ep_ret, ep_best, L.env_steps});
        ep_ret = 0.0;
        le.reset();
        ep_best = le.fidelity();
      }
    }
    if (buf.empty()) break;

    // Discounted returns, bootstrapped from the critic if the rollout cut an episode.
    const std::size_t B = buf.size();
    std::vector<double> ret(B);
    double next = buf.back().done ? 0.0 : net.forward(state_features(le.current_state(), tgt)).value;
    for (std::size_t i = B; i-- > 0;) {
      next = buf[i].reward + cfg.gamma * (buf[i].done ? 0.0 : next);
      ret[i] = next;
    }
    std::vector<double> adv(B);
    double mean = 0.0;
    for (std::size_t i = 0; i < B; ++i) mean += (adv[i] = ret[i] - buf[i].value);
    mean /= static_cast<double>(B);
    double var = 0.0;
    for (double a : adv) var += (a - mean) * (a - mean);
    const double sd = std::sqrt(var / static_cast<double>(B)) + 1e-8;
    for (double& a : adv) a = (a - mean) / sd;

    std::vector<std::size_t> idx(B);
    for (std::size_t i = 0; i < B; ++i) idx[i] = i;
    for (int epoch = 0; epoch < cfg.n_epochs; ++epoch) {
      for (std::size_t i = B; i > 1; --i) std::swap(idx[i - 1], idx[rng() % i]);
      for (std::size_t start = 0; start < B; start += cfg.minibatch) {
        const std::size_t end = std::min(B, start + static_cast<std::size_t>(cfg.minibatch));
        const double inv = 1.0 / static_cast<double>(end - start);
        RVec grad = RVec::Zero(net.params().size());
        for (std::size_t m = start; m < end; ++m) {
          const Sample& s = buf[idx[m]];
          const double A = adv[idx[m]];
          const auto tr = net.forward(s.obs);
          const RVec p = softmax(tr.logits);
          const double ratio = std::exp(std::log(std::max(p(s.action), 1e-300)) - s.logp);
          // d/dlogp of -min(ratio A, clip(ratio) A); zero where the clipped branch is active.
          const bool active = (A >= 0.0 && ratio < 1.0 + cfg.clip_range) ||
                              (A < 0.0 && ratio > 1.0 - cfg.clip_range);
          RVec dlogits = RVec::Zero(n_act);
          if (active) {
            dlogits = -p;
            dlogits(s.action) += 1.0;
            dlogits *= -A * ratio * inv;
          }
          if (cfg.ent_coef > 0.0) {
            // Entropy bonus: loss -= ent_coef * H(p).
            double H = 0.0;
            for (int j = 0; j < n_act; ++j) H -= p(j) > 0.0 ? p(j) * std::log(p(j)) : 0.0;
            for (int j = 0; j < n_act; ++j) {
              if (p(j) > 0.0) dlogits(j) += cfg.ent_coef * inv * p(j) * (std::log(p(j)) + H);
            }
          }
          const double dvalue = cfg.vf_coef * 2.0 * (tr.value - ret[idx[m]]) * inv;
          net.backward(tr, dlogits, dvalue, grad);
        }
        const double gn = grad.norm();
        if (gn > cfg.max_grad_norm) grad *= cfg.max_grad_norm / gn;
        adam.step(net.params(), grad);
      }
    }

    if (cfg.early_stop && train_steps >= cfg.min_steps && L.env_steps + env.max_depth <= cfg.total_steps) {
      LayerEnv probe(env);
      while (!probe.done()) probe.step(policy.greedy_action(probe.current_state(), tgt));
      L.env_steps += probe.steps_taken();
      if (probe.fidelity() >= env.f_t) {
        L.solved = true;
        L.steps_at_solve = L.env_steps;
        break;
      }
    }
  }
  const auto final_res = synthesize_rl(policy, env);
  L.env_steps += static_cast<long>(final_res.layer.depth());
  L.final_greedy_fidelity = final_res.fidelity;
  if (L.final_greedy_fidelity >= env.f_t && !L.solved) {
    L.solved = true;
    L.steps_at_solve = L.env_steps;
  }
  return policy;
}

}  // namespace qnom
