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
 * Monte-Carlo checks of the overlap concentration bounds behind parameter
 * gradient vanishing, and the commutator formula for the gradient of the
 * appended-layer indicator c2.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qnom/encoding.hpp"
#include "qnom/pqc.hpp"

namespace qnom {

struct BoundExperiment {
  int d = 64;
  double epsilon = 0.2;
  long samples = 10000;
  int m = 1;
  double C = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct TailEstimate {
  double empirical_tail = 0.0;
  double analytic_bound = 0.0;
  double sigma = 0.0;  ///< sqrt(b (1 - b) / samples) with b clamped to [0, 1]
  bool within_bound() const { return empirical_tail <= analytic_bound + 3.0 * sigma; }
};

/// Real u, v with N(0, 1/d) entries; tail of |<u|v>| >= eps; bound 4 exp(-d eps^2 / 8).
TailEstimate lemma1_mc(const BoundExperiment& exp);

/// Complex gradient and m complex rows with N(0, C/d) real and imaginary parts;
/// tail of sqrt(sum_i |<row_i|g>|^2) >= eps; bound 8 m exp(-d eps^2 / (128 C^2 m)).
TailEstimate result1_mc(const BoundExperiment& exp);

struct GridRow {
  std::string kind;  ///< "lemma1" or "result1"
  int d;
  double epsilon;
  int m;
  double empirical;
  double bound;
  double sigma;
};

std::vector<GridRow> concentration_grid(const std::vector<int>& ds, const std::vector<double>& eps,
                                        const std::vector<int>& ms, long samples, std::uint64_t seed);
void write_grid_csv(const std::string& path, const std::vector<GridRow>& rows);

struct BpGradient {
  double analytic = 0.0;
  double finite_diff = 0.0;
};

/// c2(alpha) = 1 - |<z'|T(alpha)|z>|^2. Analytic derivative with respect to
/// alpha_k: sum over the gates g driven by alpha_k of
///   i <psi_g| [V_g, X_g] |psi_g>,  V_g = -scale * G_g,  X_g = A_g^dagger rho' A_g,
/// where psi_g is the state right after gate g and A_g the gates that follow.
BpGradient bp_gradient_check(const Circuit& t_circuit, const ParamVector& alpha, int k, const EncodedState& z,
                             const EncodedState& z_prime, double h = 1e-5);

}  // namespace qnom
