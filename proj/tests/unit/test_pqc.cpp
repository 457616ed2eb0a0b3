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

#include <unsupported/Eigen/MatrixFunctions>

#include "qnom/error.hpp"
#include "qnom/pqc.hpp"
#include "test_util.hpp"

using namespace qnom;

namespace {
Circuit single(GateKind k, std::vector<int> q, int n = 1) {
  Circuit c;
  c.n_qubits = n;
  c.add_param_gate(k, std::move(q));
  return c;
}

std::vector<int> all_sites(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

// Dense product of matrix exponentials of the generators; ignores H gates.
CMat dense_unitary(const Circuit& c, const ParamVector& theta) {
  const Index dim = Index{1} << c.n_qubits;
  CMat u = CMat::Identity(dim, dim);
  for (const auto& g : c.gates) {
    const double phi = theta[static_cast<std::size_t>(g.param_index)] * g.scale;
    const CMat G = gate_generator(c, g);
    u = (Complex(0, -phi) * G).exp() * u;
  }
  return u;
}
}  // namespace

TEST(Gates, RxPiFlipsWithPhase) {
  const auto c = single(GateKind::RX, {0});
  const CVec out = circuit_state(c, {M_PI});
  EXPECT_NEAR(std::abs(out(0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out(1) - Complex(0, -1)), 0.0, 1e-15);
}

TEST(Gates, ZeroAnglesLeaveStateUnchanged) {
  std::mt19937_64 rng(31);
  Circuit c;
  c.n_qubits = 3;
  for (GateKind k : {GateKind::RX, GateKind::RY, GateKind::RZ}) c.add_param_gate(k, {1});
  for (GateKind k : {GateKind::RXX, GateKind::RYY, GateKind::RZZ}) c.add_param_gate(k, {0, 2});
  const auto s = qnom::testing::random_state(3, rng);
  const auto out = apply_circuit(c, ParamVector(6, 0.0), s);
  EXPECT_LE((out.amps() - s.amps()).norm(), 1e-15);
}

TEST(Gates, MatchMatrixExponentialOfGenerator) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> ang(-3, 3);
  Circuit c;
  c.n_qubits = 3;
  c.cost_edges = {{0, 1}, {1, 2}};
  c.add_param_gate(GateKind::RX, {0});
  c.add_param_gate(GateKind::RY, {2});
  c.add_param_gate(GateKind::RZ, {1});
  c.add_param_gate(GateKind::RXX, {2, 0});
  c.add_param_gate(GateKind::RYY, {0, 1}, 2.0);
  c.add_param_gate(GateKind::RZZ, {1, 2});
  c.add_param_gate(GateKind::EXP_HC, all_sites(3));
  c.add_param_gate(GateKind::EXP_HB, all_sites(3));
  ParamVector th(8);
  for (auto& t : th) t = ang(rng);
  const auto s = qnom::testing::random_state(3, rng);
  const CVec want = dense_unitary(c, th) * s.amps();
  EXPECT_LE((apply_circuit(c, th, s).amps() - want).norm(), 1e-12);
  // Adjoint undoes the circuit.
  CVec v = s.amps();
  apply_gates(c, th, v, 0, c.depth());
  apply_gates_adjoint(c, th, v, 0, c.depth());
  EXPECT_LE((v - s.amps()).norm(), 1e-12);
}

TEST(Gates, RotationGeneratorsHaveHalfAngle) {
  const auto c = single(GateKind::RY, {0});
  EXPECT_LE((gate_generator(c, c.gates[0]) - 0.5 * pauli_matrix(PauliString::parse("Y"))).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(Gates, ExpHcIsDiagonalPhaseByCut) {
  Circuit c;
  c.n_qubits = 4;
  c.cost_edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  c.add_param_gate(GateKind::EXP_HC, all_sites(4));
  const double gamma = 0.37;
  for (Index b = 0; b < 16; ++b) {
    CVec basis = CVec::Zero(16);
    basis(b) = 1;
    int cut = 0;
    for (auto [u, v] : c.cost_edges) cut += ((b >> (3 - u)) & 1) != ((b >> (3 - v)) & 1);
    CVec out = basis;
    apply_gates(c, {gamma}, out, 0, 1);
    EXPECT_NEAR(std::abs(out(b) - std::polar(1.0, -gamma * cut)), 0.0, 1e-14);
    EXPECT_NEAR(out.norm(), 1.0, 1e-14);
  }
}

TEST(Gates, HadamardLayer) {
  const auto base = ansatz_library(AnsatzId::QAOA1, Graph::cycle(4));
  const auto c = with_plus_reference(base);
  const CVec plus = circuit_state(c, ParamVector(2, 0.0));
  EXPECT_LE((plus - CVec::Constant(16, 0.25)).norm(), 1e-14);
  EXPECT_EQ(c.n_params, base.n_params);
}

TEST(CircuitTest, ValidateRejects) {
  Circuit c;
  c.n_qubits = 2;
  c.gates.push_back({GateKind::RX, {2}, 0, 1.0});
  c.n_params = 1;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.gates = {{GateKind::RXX, {1, 1}, 0, 1.0}};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.gates = {{GateKind::RX, {0}, 3, 1.0}};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.gates = {{GateKind::RX, {0, 1}, 0, 1.0}};
  EXPECT_THROW(c.validate(), InvalidArgument);
  EXPECT_THROW(parse_gate_kind("CNOT"), InvalidArgument);
}

TEST(CircuitTest, AppendShiftsParams) {
  auto a = single(GateKind::RX, {0}, 2);
  const auto b = single(GateKind::RY, {1}, 2);
  a.append(b);
  EXPECT_EQ(a.n_params, 2);
  EXPECT_EQ(a.gates[1].param_index, 1);
}

TEST(Fidelity, IndicatorAndFit) {
  const auto c = single(GateKind::RX, {0});
  const EncodedState target(circuit_state(c, {0.7}), 2);
  EXPECT_NEAR(fidelity_indicator(c, {0.7}, target), 0.0, 1e-14);
  EXPECT_NEAR(fidelity_indicator(c, {0.0}, target), std::pow(std::sin(0.35), 2), 1e-14);
  const auto fit = optimize_params(c, {0.0}, target);
  EXPECT_LE(fit.c1, 1e-8);
  EXPECT_NEAR(std::remainder(std::abs(fit.theta[0]) - 0.7, 2 * M_PI), 0.0, 1e-3);
}

TEST(Fidelity, TargetAlreadyReachedReturnsImmediately) {
  const auto c = ansatz_library(AnsatzId::HWE, Graph::cycle(4));
  const ParamVector th{0.1, 0.2, 0.3, 0.4};
  const EncodedState target(circuit_state(c, th), 16);
  const auto fit = optimize_params(c, th, target);
  EXPECT_LE(fit.c1, 1e-10);
}

TEST(Fidelity, UnreachableTargetReportsPositiveIndicator) {
  std::mt19937_64 rng(33);
  const auto c = ansatz_library(AnsatzId::QAOA1, Graph::cycle(4));
  const auto target = qnom::testing::random_state(4, rng);
  const double start = fidelity_indicator(c, {0.0, 0.0}, target);
  const auto fit = optimize_params(c, {0.0, 0.0}, target, 200);
  EXPECT_GT(fit.c1, 1e-3);
  EXPECT_LE(fit.c1, start);
  EXPECT_LE(fit.evals, 200);
}

TEST(Ansatz, ParameterCountsAndIdentityAtZero) {
  const Graph g = Graph::cycle(4);
  EXPECT_EQ(ansatz_library(AnsatzId::QAOA1, g).n_params, 2);
  EXPECT_EQ(ansatz_library(AnsatzId::QAOA1_RX, g).n_params, 3);
  EXPECT_EQ(ansatz_library(AnsatzId::HWE, g).n_params, 4);
  EXPECT_EQ(ansatz_library(AnsatzId::HWE_RY, g).n_params, 5);
  for (AnsatzId id : all_ansatz_ids()) {
    const auto c = ansatz_library(id, g);
    const CVec s = circuit_state(c, ParamVector(static_cast<std::size_t>(c.n_params), 0.0));
    EXPECT_NEAR(std::abs(s(0)), 1.0, 1e-14) << to_string(id);
    EXPECT_EQ(parse_ansatz_id(to_string(id)), id);
  }
  EXPECT_THROW(parse_ansatz_id("QAOA7"), InvalidArgument);
}

TEST(Ansatz, HweStructure) {
  const auto c = ansatz_library(AnsatzId::HWE, Graph::cycle(4));
  ASSERT_EQ(c.gates.size(), 4U);
  EXPECT_EQ(c.gates[0].kind, GateKind::RXX);
  EXPECT_EQ(c.gates[0].qubits, (std::vector<int>{0, 1}));
  EXPECT_EQ(c.gates[3].kind, GateKind::RZZ);
  EXPECT_EQ(c.gates[3].qubits, (std::vector<int>{0, 3}));
  EXPECT_DOUBLE_EQ(c.gates[0].scale, 2.0);
}

TEST(Gradient, ParameterShiftMatchesFiniteDifferences) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> ang(-2, 2);
  const Graph g = Graph::cycle(4);
  const CMat obs = pauli_matrix(maxcut_hamiltonian(g), 4);
  for (AnsatzId id : all_ansatz_ids()) {
    const auto c = with_plus_reference(ansatz_library(id, g));
    ParamVector th(static_cast<std::size_t>(c.n_params));
    for (auto& t : th) t = ang(rng);
    const auto a = ansatz_gradient(c, th, obs);
    const auto b = expectation_gradient_fd(c, th, obs);
    ASSERT_EQ(a.size(), th.size());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-7) << to_string(id) << " " << k;
  }
}

TEST(CircuitIo, JsonRoundTrip) {
  auto c = with_plus_reference(ansatz_library(AnsatzId::HWE_RY, Graph::cycle(4)));
  const ParamVector th{0.1, -0.2, 0.3, 1.5, 2.25};
  const auto [c2, th2] = circuit_from_json(circuit_to_json(c, th));
  EXPECT_EQ(c2, c);
  EXPECT_EQ(th2, th);
  const auto path = (std::filesystem::temp_directory_path() / "qnom_circuit.json").string();
  save_circuit(path, c, th);
  const auto [c3, th3] = load_circuit(path);
  EXPECT_EQ(c3, c);
  EXPECT_EQ(th3, th);
  EXPECT_THROW(circuit_from_json("{\"n_qubits\": 2}"), Error);
}
