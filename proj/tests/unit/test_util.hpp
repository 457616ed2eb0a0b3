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

#pragma once

#include <cmath>
#include <random>

#include "qnom/encoding.hpp"
#include "qnom/qcore.hpp"

namespace qnom::testing {

inline CVec random_cvec(Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  CVec v(n);
  for (Index i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v;
}

inline CVec random_unit(Index n, std::mt19937_64& rng) {
  CVec v = random_cvec(n, rng);
  return v / v.norm();
}

inline EncodedState random_state(int n_qubits, std::mt19937_64& rng) {
  const Index dim = Index{1} << n_qubits;
  return EncodedState(random_unit(dim, rng), dim);
}

inline CMat random_hermitian(Index n, std::mt19937_64& rng) {
  CMat m(n, n);
  for (Index j = 0; j < n; ++j) m.col(j) = random_cvec(n, rng);
  return 0.5 * (m + m.adjoint());
}

inline VariableVector random_point(std::mt19937_64& rng, int d = 3, double box = 2.0) {
  std::uniform_real_distribution<double> u(-box, box);
  CVec v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(u(rng), u(rng));
  return VariableVector::from_variables(v);
}

/// The quartic benchmark written with moduli and real parts only.
inline double quartic_oracle(const VariableVector& z) {
  const Complex z1 = z[1], z2 = z[2], z3 = z[3];
  const double a1 = std::norm(z1), a2 = std::norm(z2), a3 = std::norm(z3);
  return a1 * a1 + a2 * a2 + a3 * a3 + 4.0 * (std::conj(z1) * std::conj(z1) * z2 * z2).real() +
         6.0 * a1 * a2 - 2.0 * a1 * a3 - 2.0 * a2 * a3 - 2.0 * a1 - 2.0 * a2 + 6.0 * a3 +
         4.0 * (z3 * z3).real() + 1.0;
}

}  // namespace qnom::testing
