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

#include <cmath>

#include "qnom/optimize.hpp"

using namespace qnom;

TEST(NelderMead, Quadratic) {
  auto f = [](const std::vector<double>& x) { return (x[0] - 1) * (x[0] - 1) + 4 * (x[1] + 2) * (x[1] + 2); };
  const auto r = nelder_mead(f, {0.0, 0.0}, {2000, 0.5, 1e-16, 1e-12, 8, 1});
  EXPECT_NEAR(r.x[0], 1.0, 1e-5);
  EXPECT_NEAR(r.x[1], -2.0, 1e-5);
  EXPECT_LE(r.f, 1e-10);
}

TEST(NelderMead, Rosenbrock) {
  auto f = [](const std::vector<double>& x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  NelderMeadOptions opt;
  opt.max_evals = 5000;
  const auto r = nelder_mead(f, {-1.2, 1.0}, opt);
  EXPECT_NEAR(r.x[0], 1.0, 1e-3);
  EXPECT_NEAR(r.x[1], 1.0, 2e-3);
}

TEST(NelderMead, NeverWorseThanStartAndBudgetRespected) {
  int calls = 0;
  auto f = [&](const std::vector<double>& x) {
    ++calls;
    return std::sin(5 * x[0]) + std::cos(3 * x[1]) + 0.1 * x[2] * x[2];
  };
  NelderMeadOptions opt;
  opt.max_evals = 37;
  const std::vector<double> x0{0.3, -0.2, 0.5};
  const auto r = nelder_mead(f, x0, opt);
  const double f0 = std::sin(1.5) + std::cos(-0.6) + 0.025;
  EXPECT_LE(r.f, f0);
  EXPECT_LE(r.evals, 37);
  EXPECT_LE(calls, 37);
}

TEST(NelderMead, TargetStopsEarly) {
  auto f = [](const std::vector<double>& x) { return x[0] * x[0]; };
  NelderMeadOptions opt;
  opt.target = 0.5;
  const auto r = nelder_mead(f, {3.0}, opt);
  EXPECT_LE(r.f, 0.5);
  EXPECT_LT(r.evals, 100);
}

TEST(NelderMead, Deterministic) {
  auto f = [](const std::vector<double>& x) { return std::sin(3 * x[0]) * std::cos(2 * x[1]) + 0.05 * x[0] * x[0]; };
  NelderMeadOptions opt;
  opt.seed = 99;
  const auto a = nelder_mead(f, {0.1, 0.2}, opt);
  const auto b = nelder_mead(f, {0.1, 0.2}, opt);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.f, b.f);
}

TEST(Minimize1d, FindsPeriodicMinimum) {
  const double x = minimize_1d([](double t) { return std::cos(t - 1.0); }, -M_PI, M_PI);
  EXPECT_NEAR(std::remainder(x - (1.0 + M_PI), 2 * M_PI), 0.0, 1e-6);
}
