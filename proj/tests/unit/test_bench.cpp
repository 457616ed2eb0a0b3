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
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "qnom/error.hpp"
#include "qnom/experiments.hpp"
#include "qnom/report.hpp"

using namespace qnom;

namespace {
const Graph kRing = Graph::cycle(4);
}

TEST(BruteForce, SmallGraphs) {
  EXPECT_EQ(brute_force_maxcut(kRing), 4);
  EXPECT_EQ(brute_force_maxcut(Graph{2, {{0, 1}}}), 1);
  EXPECT_EQ(brute_force_maxcut(Graph::complete(4)), 4);
  EXPECT_EQ(brute_force_maxcut(Graph::complete(5)), 6);
  EXPECT_EQ(brute_force_maxcut(Graph{3, {}}), 0);
}

TEST(Stationarity, QaoaDepthOneRingBound) {
  const auto c = maxcut_initial_circuit(AnsatzId::QAOA1, kRing);
  const CMat obs = pauli_matrix(maxcut_hamiltonian(kRing), 4);
  const auto fit = train_to_stationarity(c, maxcut_initial_params(c), obs);
  EXPECT_LE(fit.grad_norm, 1e-6);
  // n (2p + 1) / (2p + 2) with n = 4, p = 1.
  EXPECT_LE(fit.cost, 3.0 + 1e-9);
  EXPECT_NEAR(fit.cost, 3.0, 1e-6);
}

TEST(Stationarity, InitialParamsAreFixed) {
  const auto c = maxcut_initial_circuit(AnsatzId::HWE_RY, kRing);
  const auto th = maxcut_initial_params(c);
  ASSERT_EQ(th.size(), 5U);
  EXPECT_EQ(th, maxcut_initial_params(c));
}

TEST(MaxcutExperiment, QaoaIdealReachesOptimum) {
  NOMConfig cfg;
  const auto rep = run_maxcut_experiment(cfg, kRing, {EncodeMode::Ideal}, {AnsatzId::QAOA1});
  ASSERT_EQ(rep.runs.size(), 1U);
  const auto& run = rep.runs[0];
  EXPECT_EQ(run.label, "QAOA1/ideal");
  EXPECT_GE(final_cost(run.trace), 3.95);
  EXPECT_LE(run.extras.at("init_cost"), 3.0 + 1e-9);
  EXPECT_EQ(run.extras.at("optimum"), 4.0);
  double prev = run.trace.initial_cost;
  for (const auto& r : run.trace.records) {
    EXPECT_GE(r.cost, prev - 1e-9);
    prev = r.cost;
  }
}

TEST(Aggregates, RecomputableFromTraces) {
  std::vector<RunRecord> runs(3);
  const double finals[] = {1.0, 2.0, 4.0};
  for (int i = 0; i < 3; ++i) {
    for (int t = 1; t <= i + 2; ++t) {
      IterationRecord r;
      r.t = t;
      r.cost = finals[i] * t / (i + 2);
      runs[static_cast<std::size_t>(i)].trace.records.push_back(r);
    }
  }
  const auto a = compute_aggregates(runs);
  const double mean = 7.0 / 3.0;
  const double var = ((1 - mean) * (1 - mean) + (2 - mean) * (2 - mean) + (4 - mean) * (4 - mean)) / 3.0;
  EXPECT_NEAR(a.mean_final_cost, mean, 1e-14);
  EXPECT_NEAR(a.std_final_cost * a.std_final_cost, var, 1e-12);
  EXPECT_NEAR(a.mean_iterations, 3.0, 1e-14);
}

TEST(PolyExperiment, InitialPointsOnCircle) {
  const auto pts = poly_initial_points();
  ASSERT_EQ(pts.size(), 12U);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    EXPECT_NEAR(std::abs(pts[k][1]), 1.3 * std::abs(std::cos(k * M_PI / 6)), 1e-12);
    EXPECT_NEAR(std::hypot(pts[k][1].real(), pts[k][2].real()), 1.3, 1e-12);
    EXPECT_EQ(pts[k][3], Complex(0.0));
    EXPECT_EQ(pts[k][1].imag(), 0.0);
  }
}

TEST(PolyExperiment, InitialCircuitFidelity) {
  const auto z = poly_initial_points()[1];
  const auto [c, th] = poly_initial_circuit(z);
  const CVec s = circuit_state(c, th);
  const CVec e = encode(z).amps();
  EXPECT_GE(std::norm(e.dot(s)), 0.998);
}

TEST(PolyExperiment, PlaneMinima) {
  const auto mins = plane_minima_oracle(101);
  ASSERT_EQ(mins.size(), 4U);
  for (auto [x, y] : mins) {
    EXPECT_NEAR(std::abs(x) + std::abs(y), 1.0, 1e-4);
    EXPECT_NEAR(std::abs(x * y), 0.0, 1e-4);
  }
}

TEST(Damping, ZeroStepKeepsErrorAndQuadraticIsExact) {
  // |z1|^2 as a p = 1 form; the real Hessian is 2 I.
  CMat F = CMat::Zero(2, 2);
  F(1, 1) = 1;
  const CostSpec spec(F, 1, CostMode::Affine);
  const auto z = VariableVector::from_variables((CVec(1) << 0.0).finished());
  const auto rep = perturbation_damping_demo(spec, z, 1e-3, {0.0, 0.25, 0.5});
  ASSERT_EQ(rep.rows.size(), 3U);
  EXPECT_NEAR(rep.rows[0].ratio, 1.0, 1e-6);
  EXPECT_NEAR(rep.rows[1].ratio, 0.5, 1e-5);
  EXPECT_NEAR(rep.rows[2].ratio, 0.0, 1e-5);
  EXPECT_NEAR(rep.lambda_max, 2.0, 1e-4);
}

TEST(Damping, QuarticWithinContraction) {
  const auto spec = quartic_xyz_cost();
  const auto z = VariableVector::from_variables((CVec(3) << 0.98, 0.01, 0.0).finished());
  const auto rep = perturbation_damping_demo(spec, z, 1e-4, {0.02, 0.05, 0.1}, true);
  EXPECT_NEAR(rep.lambda_max, 16.0, 1e-3);
  for (const auto& r : rep.rows) EXPECT_LE(r.ratio, r.contraction + 1e-3) << r.xi;
}

TEST(Report, SummaryCsvSvg) {
  ExperimentReport rep;
  rep.name = "toy";
  rep.config["xi"] = "0.2";
  RunRecord run;
  run.label = "a";
  run.trace.initial_cost = 0.5;
  for (int t = 1; t <= 3; ++t) {
    IterationRecord r;
    r.t = t;
    r.cost = t;
    run.trace.records.push_back(r);
  }
  run.extras["k"] = 1.5;
  rep.runs.push_back(run);
  rep.aggregates = compute_aggregates(rep.runs);
  const auto j = nlohmann::json::parse(summary_json(rep, {{"ok", true}, {"bad", false}}, {{"n", "x"}}));
  EXPECT_EQ(j["experiment"], "toy");
  EXPECT_EQ(j["all_checks_pass"], false);
  EXPECT_EQ(j["runs"][0]["final_cost"], 3.0);
  EXPECT_EQ(j["runs"][0]["extras"]["k"], 1.5);
  EXPECT_EQ(j["notes"]["n"], "x");
  const std::string csv = report_to_csv(rep);
  EXPECT_EQ(csv.rfind("run,t,cost", 0), 0U);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  const std::string svg = svg_line_chart("t", "x", "y", cost_series(rep));
  EXPECT_EQ(svg.rfind("<svg", 0), 0U);
  EXPECT_NE(svg.find("polyline"), std::string::npos);
  const auto dir = std::filesystem::temp_directory_path() / "qnom_report" / "nested";
  write_text_file((dir / "f.txt").string(), "hi");
  EXPECT_TRUE(std::filesystem::exists(dir / "f.txt"));
  EXPECT_THROW(write_text_file("/proc/qnom_forbidden/x.txt", "x"), IoError);
}
