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
 * Quantum-gradient step: the effective gradient operator D(z) on the dense
 * path, and a gate-level simulation of the linear-combination-of-unitaries
 * circuit that applies (I -/+ xi D) by post-selection.
 */

#pragma once

#include <vector>

#include "qnom/cost.hpp"
#include "qnom/encoding.hpp"
#include "qnom/qcore.hpp"

namespace qnom {

enum class GradientPath { Dense, LCU };
enum class StepSign { Descent, Ascent };

inline constexpr double kDefaultLearningRate = 0.2;

struct GradientOperator {
  CMat D;
  EncodedState built_at;
  GradientPath path = GradientPath::Dense;
};

/// D = Tr_{2..p}[(I (x) rho^{(x)p-1}) M_D] with rho built from the normalized
/// logical block of s. For p = 1 this is F itself.
GradientOperator effective_gradient(const CostSpec& spec, const EncodedState& s);

/// Same construction with rho = |v><v| for an unnormalized v, so that
/// D_raw(v) v = d f / d conj(v).
CMat effective_gradient_raw(const CostSpec& spec, const CVec& v);

/// normalize((I -/+ xi D)|s>). Throws DegenerateStep if the vector vanishes.
EncodedState gradient_step(const EncodedState& s, const GradientOperator& D, double xi,
                           StepSign sign);

/// Coefficient c_{alpha,i} multiplying the bare Pauli string F_{alpha,i}.
struct LcuCoefficient {
  int alpha = 0;
  int slot = 0;
  Complex value;
  PauliString op;  ///< F_{alpha,i} with unit weight
};

/// c_{alpha,i} = prod_j (a_{alpha,j} <F_{alpha,j}>) / <F_{alpha,i}>.
/// For p >= 2 throws SingularCoefficient when |<F_{alpha,i}>| < 1e-9.
std::vector<LcuCoefficient> lcu_coefficients(const CostSpec& spec, const EncodedState& s);

/// sum_j c_j F_j as a dense matrix.
CMat lcu_operator(const std::vector<LcuCoefficient>& coeffs, Index dim);

struct LcuOutcome {
  EncodedState state;
  double success_prob = 0.0;
  std::vector<LcuCoefficient> coefficients;
  double lambda = 0.0;     ///< sum |c_j|
  int select_qubits = 0;   ///< size of the coefficient register
};

/// Simulates the ancilla circuit gate by gate and post-selects on |0>_e|0>_sel.
/// Throws PostSelectionFailure when the success probability is below 1e-12.
LcuOutcome lcu_step_simulate(const CostSpec& spec, const EncodedState& s, double xi,
                             StepSign sign = StepSign::Descent);

/// ||(I -/+ xi D) z||^2 / (1 + xi lambda)^2.
double lcu_expected_success(const CMat& D, const CVec& z, double xi, double lambda, StepSign sign);

}  // namespace qnom
