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
 * Parameterized circuits on a statevector.
 *
 * Conventions: a rotation gate of kind RP applies exp(-i phi P / 2) with
 * phi = scale * theta[param_index]. EXP_HC applies exp(-i phi H_c) and EXP_HB
 * applies exp(-i phi sum_q X_q), both without the factor 1/2. H is the fixed
 * Hadamard gate (param_index = -1). Qubit 0 is the most significant bit.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnom/cost.hpp"
#include "qnom/encoding.hpp"
#include "qnom/qcore.hpp"

namespace qnom {

enum class GateKind { RX, RY, RZ, RXX, RYY, RZZ, EXP_HC, EXP_HB, H };

std::string to_string(GateKind k);
GateKind parse_gate_kind(const std::string& s);

/// True for the single- and two-site Pauli rotations.
bool is_pauli_rotation(GateKind k);
int gate_arity(GateKind k);  ///< sites per gate; 0 means "whole register"

struct Gate {
  GateKind kind = GateKind::RX;
  std::vector<int> qubits;
  int param_index = -1;
  double scale = 1.0;

  bool operator==(const Gate&) const = default;
};

using ParamVector = std::vector<double>;

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  int n_params = 0;
  /// Edge list used by EXP_HC gates.
  std::vector<std::pair<int, int>> cost_edges;

  /// Throws InvalidArgument on bad indices or arity.
  void validate() const;

  /// Appends `layer`, shifting its parameter indices past this circuit's.
  void append(const Circuit& layer);

  /// Appends a single gate driven by a fresh parameter; returns its index.
  int add_param_gate(GateKind kind, std::vector<int> qubits, double scale = 1.0);

  std::size_t depth() const noexcept { return gates.size(); }
  bool operator==(const Circuit&) const = default;
};

/// Applies gates [begin, end) to `state` in place.
void apply_gates(const Circuit& c, const ParamVector& theta, CVec& state, std::size_t begin,
                 std::size_t end);

/// Applies the adjoint of gates [begin, end) in place (last gate first).
void apply_gates_adjoint(const Circuit& c, const ParamVector& theta, CVec& state, std::size_t begin,
                         std::size_t end);

EncodedState apply_circuit(const Circuit& c, const ParamVector& theta, const EncodedState& s_in);

/// U(theta)|0...0>.
CVec circuit_state(const Circuit& c, const ParamVector& theta);

/// The generator G of gate g: the gate equals exp(-i phi G).
CMat gate_generator(const Circuit& c, const Gate& g);

/// c1 = 1 - |<target|U(theta)|0>|^2, clamped to [0, 1].
double fidelity_indicator(const Circuit& c, const ParamVector& theta, const EncodedState& target);

/// 1 - |<target|U(theta)|initial>|^2.
double transfer_infidelity(const Circuit& c, const ParamVector& theta, const CVec& initial,
                           const CVec& target);

struct ParamFit {
  ParamVector theta;
  double c1 = 1.0;
  int evals = 0;
};

inline constexpr int kDefaultOptBudget = 500;

/// Nelder-Mead on c1. Never returns c1 above c1(theta0).
ParamFit optimize_params(const Circuit& c, const ParamVector& theta0, const EncodedState& target,
                         int budget = kDefaultOptBudget, std::uint64_t seed = 0);

/// Same, for an arbitrary initial statevector.
ParamFit optimize_transfer(const Circuit& c, const ParamVector& theta0, const CVec& initial,
                           const CVec& target, int budget, std::uint64_t seed = 0);

/// <0|U^dagger obs U|0>.
double circuit_expectation(const Circuit& c, const ParamVector& theta, const CMat& obs);

/// d<obs>/d theta_k. Pauli rotations use the parameter-shift rule, EXP_HC and
/// EXP_HB central differences with h = 1e-5.
std::vector<double> ansatz_gradient(const Circuit& c, const ParamVector& theta, const CMat& obs);

/// Central finite differences of <obs>, for cross-checking.
std::vector<double> expectation_gradient_fd(const Circuit& c, const ParamVector& theta,
                                            const CMat& obs, double h = 1e-5);

enum class AnsatzId { QAOA1, QAOA1_RX, HWE, HWE_RY };

std::string to_string(AnsatzId id);
AnsatzId parse_ansatz_id(const std::string& s);
const std::vector<AnsatzId>& all_ansatz_ids();

/// The four fixed-depth circuits of the Max-Cut study on a 4-site graph.
/// QAOA1:    EXP_HC(gamma), EXP_HB(beta);                params (beta, gamma)
/// QAOA1_RX: EXP_HC(gamma), RX(alpha) on all, EXP_HB(beta); (beta, alpha, gamma)
/// HWE:      XX01(eta), XX23(gamma), ZZ12(beta), ZZ03(alpha); (alpha, beta, gamma, eta)
/// HWE_RY:   as HWE with RY(phi) on all sites after XX23;  (alpha, beta, gamma, eta, phi)
/// The two-site exponentials e^{-i P P a} are rotations with scale 2.
Circuit ansatz_library(AnsatzId id, const Graph& g);

/// Prepends a Hadamard on every qubit (the |+...+> reference state).
Circuit with_plus_reference(const Circuit& c);

/// Structured-text (JSON) circuit file: n_qubits, n_params, cost_edges,
/// gates [{kind, qubits, param_index, scale}], params.
std::string circuit_to_json(const Circuit& c, const ParamVector& theta);
std::pair<Circuit, ParamVector> circuit_from_json(const std::string& text);
void save_circuit(const std::string& path, const Circuit& c, const ParamVector& theta);
std::pair<Circuit, ParamVector> load_circuit(const std::string& path);

}  // namespace qnom
