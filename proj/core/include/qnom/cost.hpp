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
 * Polynomial cost functions f(z) = z^{dagger (x) p} F z^{(x) p}.
 *
 * A CostSpec holds the half-degree p and the Hermitian coefficient matrix F
 * acting on (d+1)^p dimensions. Optionally it also carries a factored form
 * F = sum_alpha (x)_j a_{alpha,j} F_{alpha,j} with each F_{alpha,j} a Pauli
 * string on one subsystem; the LCU gradient path needs that form.
 */

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnom/encoding.hpp"
#include "qnom/qcore.hpp"

namespace qnom {

enum class CostMode {
  Affine,    ///< variables ride on the z[0] = 1 chart
  RawState,  ///< the state itself is the variable (eigenproblems, p = 1)
};

/// One tensor-product term: factors[j] acts on subsystem j and its weight is
/// a_{alpha,j}.
struct FactoredTerm {
  std::vector<PauliString> factors;
};

class CostSpec {
 public:
  /// Throws InvalidArgument unless F is Hermitian (1e-12) of size sub_dim^p,
  /// and, when factored is present, its dense expansion matches F (1e-10).
  CostSpec(CMat F, int p, CostMode mode,
           std::optional<std::vector<FactoredTerm>> factored = std::nullopt);

  static CostSpec from_factored(std::vector<FactoredTerm> terms, CostMode mode);

  /// p = 1 cost from a qubit Hamiltonian; every term becomes a one-slot
  /// factored term.
  static CostSpec from_pauli_sum(const PauliSum& h, CostMode mode = CostMode::RawState);

  int p() const noexcept { return p_; }
  const CMat& F() const noexcept { return F_; }
  Index sub_dim() const noexcept { return sub_dim_; }
  Index d() const noexcept { return sub_dim_ - 1; }
  CostMode mode() const noexcept { return mode_; }
  const std::optional<std::vector<FactoredTerm>>& factored() const noexcept { return factored_; }
  bool has_factored() const noexcept { return factored_.has_value(); }

  /// Cached M_D = sum_k P_k F P_k.
  const CMat& md() const noexcept { return md_; }

 private:
  int p_;
  CMat F_;
  Index sub_dim_;
  CostMode mode_;
  std::optional<std::vector<FactoredTerm>> factored_;
  CMat md_;
};

/// Dense expansion of a factored form.
CMat expand_factored(const std::vector<FactoredTerm>& terms);

/// f(v) for an arbitrary (not necessarily normalized) vector v of length d+1.
double eval_cost(const CostSpec& spec, const CVec& v);
double eval_cost(const CostSpec& spec, const VariableVector& z);

/// The cost a state represents: f(decode(s)) in Affine mode, f(s) in RawState.
double state_cost(const CostSpec& spec, const EncodedState& s);

/// The quartic benchmark polynomial in the monomial form, d = 3.
double eval_cost_expanded(const VariableVector& z);

/// F = X^{(x)4} + Y^{(x)4} + Z^{(x)4}, p = 2, d = 3, factored as
/// (XX)(x)(XX) + (YY)(x)(YY) + (ZZ)(x)(ZZ).
CostSpec quartic_xyz_cost();

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  /// Throws InvalidArgument on self-loops, duplicates or out-of-range vertices.
  void validate() const;

  static Graph cycle(int n);
  static Graph complete(int n);

  /// Number of edges cut by the bit assignment (bit of vertex v is
  /// (assignment >> (n-1-v)) & 1, matching the qubit ordering).
  int cut_value(unsigned long long assignment) const;
};

/// H_c = sum_{(i,j)} (I - Z_i Z_j) / 2 on g.n sites.
PauliSum maxcut_hamiltonian(const Graph& g);

/// M_D = sum_{k=1}^p P_k F P_k, built from scratch.
CMat build_md(const CostSpec& spec);

/// Central-difference Wirtinger derivative d f / d conj(v_i) for every
/// component of v; v is used unnormalized. h must lie in [1e-7, 1e-3].
CVec wirtinger_fd_raw(const CostSpec& spec, const CVec& v, double h = 1e-5);

/// d f / d conj(z_i): components 1..d in Affine mode, 0..d in RawState mode.
CVec wirtinger_fd(const CostSpec& spec, const VariableVector& z, double h = 1e-5);

/// Loads a CostSpec from a JSON file (see README for the schema).
CostSpec load_cost_spec(const std::string& path);

/// Edge-list file: one "u v" pair per line, optional "n <count>" header,
/// '#' starts a comment.
Graph load_graph(const std::string& path);

}  // namespace qnom
