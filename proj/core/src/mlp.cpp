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

#include "qnom/mlp.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "qnom/error.hpp"

namespace qnom {

namespace {

using MatMap = Eigen::Map<const Eigen::MatrixXd>;
using MatMapMut = Eigen::Map<Eigen::MatrixXd>;

}  // namespace

ActorCritic::ActorCritic(int n_inputs, std::vector<int> hidden, int n_actions, std::uint64_t seed)
    : n_inputs_(n_inputs), n_actions_(n_actions), hidden_(std::move(hidden)) {
  if (n_inputs_ < 1 || n_actions_ < 1 || hidden_.empty()) {
    throw InvalidArgument("ActorCritic: need inputs, actions and at least one hidden layer");
  }
  for (int h : hidden_) {
    if (h < 1) throw InvalidArgument("ActorCritic: hidden widths must be positive");
  }
  build_layout();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto init = [&](const Layer& L, double gain) {
    const double sd = gain / std::sqrt(static_cast<double>(L.in));
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(L.in) * L.out; ++i) {
      params_(L.offset + i) = sd * normal(rng);
    }
  };
  for (const auto& L : trunk_) init(L, 1.0);
  init(actor_, 0.01);
  init(critic_, 1.0);
}

void ActorCritic::build_layout() {
  trunk_.clear();
  Eigen::Index off = 0;
  int in = n_inputs_;
  for (int h : hidden_) {
    trunk_.push_back({in, h, off});
    off += static_cast<Eigen::Index>(in) * h + h;
    in = h;
  }
  actor_ = {in, n_actions_, off};
  off += static_cast<Eigen::Index>(in) * n_actions_ + n_actions_;
  critic_ = {in, 1, off};
  off += in + 1;
  params_ = RVec::Zero(off);
}

ActorCritic::Trace ActorCritic::forward(const RVec& x) const {
  if (x.size() != n_inputs_) throw InvalidArgument("ActorCritic::forward: input size mismatch");
  Trace tr;
  tr.acts.reserve(trunk_.size() + 1);
  tr.acts.push_back(x);
  for (const auto& L : trunk_) {
    MatMap W(params_.data() + L.offset, L.out, L.in);
    Eigen::Map<const RVec> b(params_.data() + L.offset + static_cast<Eigen::Index>(L.in) * L.out, L.out);
    tr.acts.push_back((W * tr.acts.back() + b).array().tanh().matrix());
  }
  const RVec& h = tr.acts.back();
  MatMap Wa(params_.data() + actor_.offset, actor_.out, actor_.in);
  Eigen::Map<const RVec> ba(params_.data() + actor_.offset + static_cast<Eigen::Index>(actor_.in) * actor_.out,
                            actor_.out);
  tr.logits = Wa * h + ba;
  Eigen::Map<const RVec> wc(params_.data() + critic_.offset, critic_.in);
  tr.value = wc.dot(h) + params_(critic_.offset + critic_.in);
  return tr;
}

void ActorCritic::backward(const Trace& tr, const RVec& dlogits, double dvalue, RVec& grad) const {
  if (grad.size() != params_.size()) grad = RVec::Zero(params_.size());
  const RVec& h = tr.acts.back();
  MatMapMut gWa(grad.data() + actor_.offset, actor_.out, actor_.in);
  gWa.noalias() += dlogits * h.transpose();
  grad.segment(actor_.offset + static_cast<Eigen::Index>(actor_.in) * actor_.out, actor_.out) += dlogits;
  grad.segment(critic_.offset, critic_.in) += dvalue * h;
  grad(critic_.offset + critic_.in) += dvalue;

  MatMap Wa(params_.data() + actor_.offset, actor_.out, actor_.in);
  Eigen::Map<const RVec> wc(params_.data() + critic_.offset, critic_.in);
  RVec dh = Wa.transpose() * dlogits + dvalue * wc;
  for (std::size_t li = trunk_.size(); li-- > 0;) {
    const auto& L = trunk_[li];
    const RVec& out = tr.acts[li + 1];
    const RVec& in = tr.acts[li];
    const RVec dz = dh.array() * (1.0 - out.array().square());
    MatMapMut gW(grad.data() + L.offset, L.out, L.in);
    gW.noalias() += dz * in.transpose();
    grad.segment(L.offset + static_cast<Eigen::Index>(L.in) * L.out, L.out) += dz;
    if (li > 0) {
      MatMap W(params_.data() + L.offset, L.out, L.in);
      dh = W.transpose() * dz;
    }
  }
}

void ActorCritic::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("ActorCritic::save: cannot open " + path);
  out << "actor-critic " << n_inputs_ << ' ' << n_actions_ << ' ' << hidden_.size();
  for (int h : hidden_) out << ' ' << h;
  out << ' ' << params_.size() << '\n' << std::setprecision(17);
  for (Eigen::Index i = 0; i < params_.size(); ++i) out << params_(i) << '\n';
}

ActorCritic ActorCritic::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("ActorCritic::load: cannot open " + path);
  std::string tag;
  int n_in = 0, n_act = 0;
  std::size_t n_hidden = 0;
  if (!(in >> tag >> n_in >> n_act >> n_hidden) || tag != "actor-critic") {
    throw InvalidArgument("ActorCritic::load: bad header");
  }
  std::vector<int> hidden(n_hidden);
  for (auto& h : hidden) in >> h;
  Eigen::Index n = 0;
  in >> n;
  ActorCritic net(n_in, hidden, n_act, 0);
  if (n != net.params_.size()) throw InvalidArgument("ActorCritic::load: weight count mismatch");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(in >> net.params_(i))) throw InvalidArgument("ActorCritic::load: truncated weights");
  }
  return net;
}

bool ActorCritic::operator==(const ActorCritic& o) const {
  return n_inputs_ == o.n_inputs_ && n_actions_ == o.n_actions_ && hidden_ == o.hidden_ &&
         params_.size() == o.params_.size() && params_ == o.params_;
}

void Adam::step(RVec& params, const RVec& grad) {
  if (m_.size() != params.size()) {
    m_ = RVec::Zero(params.size());
    v_ = RVec::Zero(params.size());
    t_ = 0;
  }
  ++t_;
  m_ = b1_ * m_ + (1.0 - b1_) * grad;
  v_ = b2_ * v_ + (1.0 - b2_) * grad.cwiseProduct(grad);
  const double c1 = 1.0 - std::pow(b1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(b2_, static_cast<double>(t_));
  params.array() -= lr_ * (m_.array() / c1) / ((v_.array() / c2).sqrt() + eps_);
}

}  // namespace qnom
