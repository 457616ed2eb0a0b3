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
 * Small actor-critic multilayer perceptron with manual backpropagation and
 * an Adam optimizer over a flat parameter vector.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qnom {

using RVec = Eigen::VectorXd;

/// tanh trunk shared by a linear actor head (logits) and a linear critic head.
class ActorCritic {
 public:
  ActorCritic() = default;
  ActorCritic(int n_inputs, std::vector<int> hidden, int n_actions, std::uint64_t seed);

  struct Trace {
    std::vector<RVec> acts;  ///< input followed by each hidden activation
    RVec logits;
    double value = 0.0;
  };

  Trace forward(const RVec& x) const;

  /// Accumulates dL/dparams into grad (same layout as params()).
  void backward(const Trace& tr, const RVec& dlogits, double dvalue, RVec& grad) const;

  const RVec& params() const noexcept { return params_; }
  RVec& params() noexcept { return params_; }
  int n_inputs() const noexcept { return n_inputs_; }
  int n_actions() const noexcept { return n_actions_; }
  const std::vector<int>& hidden() const noexcept { return hidden_; }

  /// Text checkpoint: a shape header line followed by the flat weights.
  void save(const std::string& path) const;
  static ActorCritic load(const std::string& path);

  bool operator==(const ActorCritic& o) const;

 private:
  struct Layer {
    int in, out;
    Eigen::Index offset;  ///< W (out x in, column-major) then b (out)
  };
  void build_layout();

  int n_inputs_ = 0;
  int n_actions_ = 0;
  std::vector<int> hidden_;
  std::vector<Layer> trunk_;
  Layer actor_{}, critic_{};
  RVec params_;
};

class Adam {
 public:
  explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), b1_(beta1), b2_(beta2), eps_(eps) {}
  void step(RVec& params, const RVec& grad);

 private:
  double lr_, b1_, b2_, eps_;
  RVec m_, v_;
  long t_ = 0;
};

}  // namespace qnom
