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

#include "qnom/error.hpp"
#include "qnom/qgrad.hpp"
#include "test_util.hpp"

using namespace qnom;
using qnom::testing::random_point;
using qnom::testing::random_state;

namespace {
// Central differences of f in the real and imaginary parts of each component:
// df/dconj(v_i) = (df/dx_i + i df/dy_i) / 2.
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

double fid(const CVec& a, const CVec& b) { return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm()); }
}  // namespace

TEST(EffectiveGradient, RawOperatorReproducesConjugateDerivative) {
  const auto spec = quartic_xyz_cost();
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const CVec v = random_point(rng).values();
    const CVec want = conj_derivative_oracle(spec, v);
    const CVec got = effective_gradient_raw(spec, v) * v;
    EXPECT_LE((got - want).norm(), 1e-5 * std::max(1.0, want.norm()));
    EXPECT_LE((wirtinger_fd_raw(spec, v) - want).norm(), 1e-5 * std::max(1.0, want.norm()));
  }
}

TEST(EffectiveGradient, NormalizedIsRescaledRaw) {
  const auto spec = quartic_xyz_cost();
  std::mt19937_64 rng(22);
  for (int t = 0; t < 50; ++t) {
    const auto z = random_point(rng);
    const auto s = encode(z);
    const double c0 = s.c0();
    const CMat dn = effective_gradient(spec, s).D;
    const CMat dr = effective_gradient_raw(spec, z.values());
    EXPECT_LE((dn - c0 * c0 * dr).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, dr.cwiseAbs().maxCoeff()));
    EXPECT_LE(hermiticity_defect(dn), 1e-10);
  }
}

TEST(EffectiveGradient, LinearCostIsF) {
  std::mt19937_64 rng(23);
  const CMat F = qnom::testing::random_hermitian(4, rng);
  const CostSpec spec(F, 1, CostMode::RawState);
  const auto s = random_state(2, rng);
  EXPECT_EQ(effective_gradient(spec, s).D, F);
}

TEST(GradientStep, FirstOrderDescentAndAscent) {
  std::mt19937_64 rng(24);
  const CMat F = qnom::testing::random_hermitian(8, rng);
  const CostSpec spec(F, 1, CostMode::RawState);
  const auto s = random_state(3, rng);
  const auto D = effective_gradient(spec, s);
  const double f0 = state_cost(spec, s);
  const double fd = state_cost(spec, gradient_step(s, D, 0.01, StepSign::Descent));
  const double fa = state_cost(spec, gradient_step(s, D, 0.01, StepSign::Ascent));
  EXPECT_LT(fd, f0);
  EXPECT_GT(fa, f0);
}

TEST(GradientStep, MatchesExplicitFormula) {
  std::mt19937_64 rng(25);
  const auto spec = quartic_xyz_cost();
  const auto s = encode(random_point(rng));
  const auto D = effective_gradient(spec, s);
  const CVec want = (CMat::Identity(4, 4) - 0.1 * D.D) * s.logical();
  const auto out = gradient_step(s, D, 0.1, StepSign::Descent);
  EXPECT_NEAR(fid(out.logical(), want), 1.0, 1e-14);
  EXPECT_NEAR(out.amps().norm(), 1.0, 1e-13);
}

TEST(GradientStep, DegenerateThrows) {
  CMat F = CMat::Identity(2, 2);
  const CostSpec spec(F, 1, CostMode::RawState);
  const auto s = EncodedState::zero(1);
  EXPECT_THROW(gradient_step(s, effective_gradient(spec, s), 1.0, StepSign::Descent), DegenerateStep);
}

TEST(Lcu, OperatorEqualsDenseGradient) {
  const auto spec = quartic_xyz_cost();
  std::mt19937_64 rng(26);
  for (int t = 0; t < 20; ++t) {
    const auto s = encode(random_point(rng));
    const auto coeffs = lcu_coefficients(spec, s);
    EXPECT_EQ(coeffs.size(), 6U);
    const CMat D = effective_gradient(spec, s).D;
    EXPECT_LE((lcu_operator(coeffs, 4) - D).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Lcu, SimulatedCircuitMatchesDenseStep) {
  const auto spec = quartic_xyz_cost();
  std::mt19937_64 rng(27);
  for (const double xi : {0.05, 0.2, 0.5}) {
    for (const auto sign : {StepSign::Descent, StepSign::Ascent}) {
      const auto s = encode(random_point(rng));
      const auto D = effective_gradient(spec, s);
      LcuOutcome out;
      try {
        out = lcu_step_simulate(spec, s, xi, sign);
      } catch (const SingularCoefficient&) {
        continue;
      }
      const auto dense = gradient_step(s, D, xi, sign);
      EXPECT_NEAR(fid(out.state.logical(), dense.logical()), 1.0, 1e-10);
      EXPECT_NEAR(out.success_prob, lcu_expected_success(D.D, s.logical(), xi, out.lambda, sign), 1e-10);
      EXPECT_GT(out.success_prob, 0.0);
      EXPECT_LE(out.success_prob, 1.0);
    }
  }
}

TEST(Lcu, SingularCoefficientForQuarticAtVanishingExpectation) {
  // At z = 0 the state is |0>, where <XX> = <YY> = 0 on the subsystem.
  const auto s = encode(VariableVector::from_variables(CVec::Zero(3)));
  EXPECT_THROW(lcu_coefficients(quartic_xyz_cost(), s), SingularCoefficient);
}

TEST(Lcu, PauliSumSingleSlotNeedsNoDivision) {
  PauliSum h;
  h.terms.push_back(PauliString::parse("ZZ", -0.5));
  h.terms.push_back(PauliString::parse("XI", 0.3));
  const auto spec = CostSpec::from_pauli_sum(h);
  CVec plus = CVec::Constant(4, 0.5);
  const EncodedState s(plus, 4);
  const auto out = lcu_step_simulate(spec, s, 0.2, StepSign::Ascent);
  const auto dense = gradient_step(s, effective_gradient(spec, s), 0.2, StepSign::Ascent);
  EXPECT_NEAR(fid(out.state.amps(), dense.amps()), 1.0, 1e-12);
  EXPECT_NEAR(out.lambda, 0.8, 1e-14);
  EXPECT_GE(out.select_qubits, 1);
}
