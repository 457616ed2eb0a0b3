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

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "qnom/mlp.hpp"

using namespace qnom;

namespace {
RVec random_rvec(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  RVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}
}  // namespace

TEST(ActorCriticTest, Shapes) {
  const ActorCritic net(6, {8, 5}, 4, 1);
  const auto tr = net.forward(RVec::Ones(6));
  EXPECT_EQ(tr.logits.size(), 4);
  EXPECT_EQ(tr.acts.size(), 3U);
  // 6*8+8 + 8*5+5 + 5*4+4 + 5+1
  EXPECT_EQ(net.params().size(), 56 + 45 + 24 + 6);
}

TEST(ActorCriticTest, SeededInitIsDeterministic) {
  EXPECT_TRUE(ActorCritic(4, {16}, 3, 7) == ActorCritic(4, {16}, 3, 7));
  EXPECT_FALSE(ActorCritic(4, {16}, 3, 7) == ActorCritic(4, {16}, 3, 8));
}

TEST(ActorCriticTest, BackwardMatchesFiniteDifferences) {
  std::mt19937_64 rng(41);
  ActorCritic net(5, {7, 6}, 3, 2);
  const RVec x = random_rvec(5, rng);
  const RVec w = random_rvec(3, rng);
  const double c = 0.7;
  auto loss = [&](const ActorCritic& n) {
    const auto tr = n.forward(x);
    return w.dot(tr.logits) + c * tr.value;
  };
  RVec grad = RVec::Zero(net.params().size());
  net.backward(net.forward(x), w, c, grad);
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < net.params().size(); ++i) {
    ActorCritic a = net, b = net;
    a.params()(i) += h;
    b.params()(i) -= h;
    EXPECT_NEAR(grad(i), (loss(a) - loss(b)) / (2 * h), 1e-7) << i;
  }
}

TEST(ActorCriticTest, BackwardAccumulates) {
  ActorCritic net(3, {4}, 2, 3);
  const RVec x = RVec::Constant(3, 0.3);
  const auto tr = net.forward(x);
  RVec g1 = RVec::Zero(net.params().size()), g2 = g1;
  net.backward(tr, RVec::Ones(2), 1.0, g1);
  net.backward(tr, RVec::Ones(2), 1.0, g2);
  net.backward(tr, RVec::Ones(2), 1.0, g2);
  EXPECT_LE((g2 - 2 * g1).norm(), 1e-12);
}

TEST(ActorCriticTest, SaveLoadRoundTrip) {
  const ActorCritic net(4, {9, 3}, 5, 11);
  const auto path = (std::filesystem::temp_directory_path() / "qnom_net.txt").string();
  net.save(path);
  EXPECT_TRUE(ActorCritic::load(path) == net);
}

TEST(AdamTest, MinimizesQuadratic) {
  RVec p = RVec::Constant(3, 5.0);
  Adam adam(0.1);
  for (int i = 0; i < 2000; ++i) adam.step(p, 2.0 * p);
  EXPECT_LE(p.norm(), 1e-2);
}

TEST(AdamTest, FirstStepHasLearningRateMagnitude) {
  RVec p = RVec::Zero(2);
  Adam adam(0.01);
  RVec g(2);
  g << 3.0, -0.5;
  adam.step(p, g);
  EXPECT_NEAR(p(0), -0.01, 1e-9);
  EXPECT_NEAR(p(1), 0.01, 1e-9);
}
