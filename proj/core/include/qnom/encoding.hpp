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
 * Amplitude encoding of affine variable vectors z = (1, z_1, ..., z_d).
 */

#pragma once

#include "qnom/qcore.hpp"

namespace qnom {

inline constexpr double kPaddingTolerance = 1e-9;
inline constexpr double kReferenceAmplitudeFloor = 1e-9;

/// z in C^{d+1} with z[0] == 1 exactly.
class VariableVector {
 public:
  /// Takes the full vector including the leading 1.
  explicit VariableVector(CVec z);

  /// Builds (1, vars...) from the d free variables.
  static VariableVector from_variables(const CVec& vars);

  const CVec& values() const noexcept { return z_; }
  Index d() const noexcept { return z_.size() - 1; }
  Index size() const noexcept { return z_.size(); }
  Complex operator[](Index i) const { return z_(i); }

  /// Components 1..d.
  CVec variables() const { return z_.tail(d()); }

 private:
  CVec z_;
};

/// A unit-norm amplitude vector over a qubit register.
///
/// logical_dim is the number of meaningful amplitudes (d+1 for an encoded
/// variable vector); the register is zero-padded up to a power of two and the
/// padded amplitudes stay below kPaddingTolerance.
class EncodedState {
 public:
  EncodedState() = default;

  /// Checks unit norm (1e-12) and padding; does not renormalize.
  EncodedState(CVec amps, Index logical_dim);

  /// Normalizes v and pads it to the next power of two.
  static EncodedState normalized(const CVec& v, Index logical_dim = -1);

  /// |0...0> on n qubits.
  static EncodedState zero(int n_qubits);

  const CVec& amps() const noexcept { return amps_; }
  Index logical_dim() const noexcept { return logical_dim_; }
  Index dim() const noexcept { return amps_.size(); }
  int n_qubits() const { return qubit_count(amps_.size()); }

  /// The logical block (first logical_dim amplitudes).
  CVec logical() const { return amps_.head(logical_dim_); }

  /// |amps_0|, which equals c0 for encode() output.
  double c0() const { return std::abs(amps_(0)); }

 private:
  CVec amps_;
  Index logical_dim_ = 0;
};

EncodedState encode(const VariableVector& z);

/// z_i = amps_i / amps_0 over the logical block.
/// Throws VanishingReferenceAmplitude when |amps_0| < 1e-9.
VariableVector decode(const EncodedState& s);

}  // namespace qnom
