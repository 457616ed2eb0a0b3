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

#include "qnom/encoding.hpp"

#include <cmath>

#include "qnom/error.hpp"

namespace qnom {

VariableVector::VariableVector(CVec z) : z_(std::move(z)) {
  if (z_.size() < 2) throw InvalidArgument("VariableVector: need at least one variable");
  if (!all_finite(z_)) throw InvalidArgument("VariableVector: non-finite entry");
  if (z_(0) != Complex(1.0, 0.0)) throw InvalidArgument("VariableVector: z[0] must be 1");
}

VariableVector VariableVector::from_variables(const CVec& vars) {
  CVec z(vars.size() + 1);
  z(0) = 1.0;
  z.tail(vars.size()) = vars;
  return VariableVector(std::move(z));
}

EncodedState::EncodedState(CVec amps, Index logical_dim)
    : amps_(std::move(amps)), logical_dim_(logical_dim) {
  if (amps_.size() < 1) throw InvalidArgument("EncodedState: empty amplitude vector");
  qubit_count(amps_.size());
  if (logical_dim_ < 1 || logical_dim_ > amps_.size()) {
    throw InvalidArgument("EncodedState: logical_dim out of range");
  }
  if (!all_finite(amps_)) throw InvalidArgument("EncodedState: non-finite amplitude");
  if (std::abs(amps_.squaredNorm() - 1.0) > 1e-12) {
    throw InvalidArgument("EncodedState: amplitudes are not unit norm");
  }
  for (Index i = logical_dim_; i < amps_.size(); ++i) {
    if (std::abs(amps_(i)) >= kPaddingTolerance) {
      throw InvalidArgument("EncodedState: padded amplitude leaked above tolerance");
    }
  }
}

EncodedState EncodedState::normalized(const CVec& v, Index logical_dim) {
  if (logical_dim < 0) logical_dim = v.size();
  if (logical_dim > v.size()) throw InvalidArgument("EncodedState::normalized: logical_dim > size");
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidArgument("EncodedState::normalized: zero or non-finite vector");
  }
  CVec amps = CVec::Zero(next_pow2(v.size()));
  amps.head(v.size()) = v / n;
  return EncodedState(std::move(amps), logical_dim);
}

EncodedState EncodedState::zero(int n_qubits) {
  CVec amps = CVec::Zero(Index{1} << n_qubits);
  amps(0) = 1.0;
  const Index dim = amps.size();
  return EncodedState(std::move(amps), dim);
}

EncodedState encode(const VariableVector& z) {
  const CVec& v = z.values();
  const double c0 = 1.0 / std::sqrt(1.0 + v.tail(z.d()).squaredNorm());
  CVec amps = CVec::Zero(next_pow2(v.size()));
  amps(0) = c0;
  amps.segment(1, z.d()) = c0 * v.tail(z.d());
  return EncodedState(std::move(amps), v.size());
}

VariableVector decode(const EncodedState& s) {
  const Complex a0 = s.amps()(0);
  if (std::abs(a0) < kReferenceAmplitudeFloor) {
    throw VanishingReferenceAmplitude("decode: |amps_0| below 1e-9; the affine chart is undefined");
  }
  CVec z = s.logical() / a0;
  z(0) = 1.0;
  return VariableVector(std::move(z));
}

}  // namespace qnom
