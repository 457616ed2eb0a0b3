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
 * Dense complex linear algebra and multi-qubit primitives.
 *
 * Ordering convention: in a p-fold tensor product the first subsystem is
 * the most significant index block, and in a qubit register qubit 0 is the
 * most significant bit. Every tensor product, partial trace, subsystem
 * permutation and Pauli string in the library uses this convention.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qnom {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

CMat kron(const CMat& a, const CMat& b);
CVec kron(const CVec& a, const CVec& b);

/// Kronecker power v^{(x)p}; p = 0 yields the scalar 1.
CVec kron_power(const CVec& v, int p);

/// Traces out subsystems 2..p of an operator on (sub_dim)^p, keeping the first.
CMat partial_trace_keep_first(const CMat& m, Index sub_dim, int p);

/// Permutation matrix swapping subsystem 1 with subsystem k (1-based) of a
/// p-fold product of sub_dim-dimensional spaces.
CMat permutation_operator(int p, int k, Index sub_dim);

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

struct PauliString {
  std::vector<Pauli> factors;
  Complex weight{1.0, 0.0};

  /// Parses a label such as "XIZY".
  static PauliString parse(std::string_view label, Complex weight = 1.0);

  std::size_t sites() const noexcept { return factors.size(); }
  std::string label() const;
};

struct PauliSum {
  std::vector<PauliString> terms;

  /// Site count shared by all terms; 0 for the empty sum.
  std::size_t sites() const;
  bool is_hermitian(double tol = 1e-12) const;
};

/// weight * (factor_0 (x) factor_1 (x) ...).
CMat pauli_matrix(const PauliString& ps);

/// Dense matrix of a Pauli sum on n_sites sites (the zero operator when empty).
CMat pauli_matrix(const PauliSum& sum, std::size_t n_sites);

/// <a|b>, conjugating the first argument.
Complex inner(const CVec& a, const CVec& b);

/// <state|op|state>.
Complex expectation(const CVec& state, const CMat& op);

/// |<a|b>|^2 for (assumed) unit-norm a and b.
double fidelity(const CVec& a, const CVec& b);

/// max |m - m^dagger| entry.
double hermiticity_defect(const CMat& m);

bool all_finite(const CVec& v);
bool all_finite(const CMat& m);

/// Number of qubits n with 2^n == dim; throws if dim is not a power of two.
int qubit_count(Index dim);

/// Smallest power of two >= n.
Index next_pow2(Index n);

}  // namespace qnom
