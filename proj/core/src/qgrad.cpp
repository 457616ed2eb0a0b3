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

#include "qnom/qgrad.hpp"

#include <cmath>
#include <string>

#include "qnom/error.hpp"

namespace qnom {

namespace {

CVec unit_logical(const CostSpec& spec, const EncodedState& s) {
  if (s.logical_dim() != spec.sub_dim()) {
    throw DimensionMismatch("effective_gradient: state logical dimension != d+1");
  }
  return s.logical() / s.logical().norm();
}

CMat reduce_md(const CostSpec& spec, const CVec& v) {
  if (spec.p() == 1) return spec.F();
  const CMat rho = v * v.adjoint();
  CMat rest = rho;
  for (int j = 2; j < spec.p(); ++j) rest = kron(rest, rho);
  const CMat lifted = kron(CMat::Identity(spec.sub_dim(), spec.sub_dim()), rest);
  return partial_trace_keep_first(lifted * spec.md(), spec.sub_dim(), spec.p());
}

}  // namespace

GradientOperator effective_gradient(const CostSpec& spec, const EncodedState& s) {
  const CVec v = unit_logical(spec, s);
  GradientOperator g;
  g.D = reduce_md(spec, v);
  g.built_at = s;
  g.path = GradientPath::Dense;
  return g;
}

CMat effective_gradient_raw(const CostSpec& spec, const CVec& v) {
  if (v.size() != spec.sub_dim()) throw DimensionMismatch("effective_gradient_raw: size != d+1");
  return reduce_md(spec, v);
}

EncodedState gradient_step(const EncodedState& s, const GradientOperator& D, double xi,
                           StepSign sign) {
  if (!(xi > 0.0)) throw InvalidArgument("gradient_step: xi must be positive");
  const CVec v = s.logical();
  if (D.D.rows() != v.size() || D.D.cols() != v.size()) {
    throw DimensionMismatch("gradient_step: D does not match the state");
  }
  const double sgn = sign == StepSign::Descent ? -1.0 : 1.0;
  const CVec w = v + sgn * xi * (D.D * v);
  if (w.norm() < 1e-12) throw DegenerateStep("gradient_step: (I -/+ xi D)|z> vanished");
  CVec amps = CVec::Zero(s.dim());
  amps.head(w.size()) = w / w.norm();
  return EncodedState(std::move(amps), s.logical_dim());
}

std::vector<LcuCoefficient> lcu_coefficients(const CostSpec& spec, const EncodedState& s) {
  if (!spec.has_factored()) throw InvalidArgument("lcu_coefficients: cost has no factored form");
  const CVec v = unit_logical(spec, s);
  const auto& terms = *spec.factored();
  std::vector<LcuCoefficient> out;
  for (std::size_t a = 0; a < terms.size(); ++a) {
    const auto& factors = terms[a].factors;
    std::vector<Complex> ev(factors.size());
    for (std::size_t j = 0; j < factors.size(); ++j) {
      PauliString bare = factors[j];
      bare.weight = 1.0;
      ev[j] = expectation(v, pauli_matrix(bare));
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (spec.p() >= 2 && std::abs(ev[i]) < 1e-9) {
        throw SingularCoefficient(static_cast<int>(a), static_cast<int>(i),
                                  "lcu_coefficients: <F_{" + std::to_string(a) + "," +
                                      std::to_string(i) + "}> vanishes");
      }
      // The product over j != i equals the ratio form without dividing.
      Complex c = factors[i].weight;
      for (std::size_t j = 0; j < factors.size(); ++j) {
        if (j != i) c *= factors[j].weight * ev[j];
      }
      LcuCoefficient lc;
      lc.alpha = static_cast<int>(a);
      lc.slot = static_cast<int>(i);
      lc.value = c;
      lc.op = factors[i];
      lc.op.weight = 1.0;
      out.push_back(std::move(lc));
    }
  }
  return out;
}

CMat lcu_operator(const std::vector<LcuCoefficient>& coeffs, Index dim) {
  CMat D = CMat::Zero(dim, dim);
  for (const auto& c : coeffs) D += c.value * pauli_matrix(c.op);
  return D;
}

double lcu_expected_success(const CMat& D, const CVec& z, double xi, double lambda, StepSign sign) {
  const double sgn = sign == StepSign::Descent ? -1.0 : 1.0;
  const double n = (z + sgn * xi * (D * z)).norm();
  return n * n / ((1.0 + xi * lambda) * (1.0 + xi * lambda));
}

LcuOutcome lcu_step_simulate(const CostSpec& spec, const EncodedState& s, double xi, StepSign sign) {
  if (!(xi >= 0.0)) throw InvalidArgument("lcu_step_simulate: xi must be non-negative");
  LcuOutcome out;
  out.coefficients = lcu_coefficients(spec, s);
  const auto& cs = out.coefficients;
  const Index K = static_cast<Index>(cs.size());
  int r = 0;
  while ((Index{1} << r) < K) ++r;
  if (r == 0) r = 1;
  const Index S = Index{1} << r;
  out.select_qubits = r;

  double lambda = 0.0;
  for (const auto& c : cs) lambda += std::abs(c.value);
  out.lambda = lambda;
  const Index dim = spec.sub_dim();

  // Principal unitaries U_j = e^{i phi_j} F_j.
  std::vector<CMat> U;
  U.reserve(K);
  for (const auto& c : cs) {
    const double mag = std::abs(c.value);
    const Complex phase = mag > 0.0 ? c.value / mag : Complex(1.0, 0.0);
    U.push_back(phase * pauli_matrix(c.op));
  }

  // PREP: real Householder reflection taking e_0 to sqrt(|c_j| / lambda).
  Eigen::VectorXd u = Eigen::VectorXd::Zero(S);
  if (lambda > 0.0) {
    for (Index j = 0; j < K; ++j) u(j) = std::sqrt(std::abs(cs[j].value) / lambda);
  } else {
    u(0) = 1.0;
  }
  Eigen::VectorXd w = -u;
  w(0) += 1.0;
  Eigen::MatrixXd prep = Eigen::MatrixXd::Identity(S, S);
  if (w.norm() > 1e-15) prep -= 2.0 * w * w.transpose() / w.squaredNorm();

  // Ancilla rotation R(t) = [[1, -t], [t, 1]] / sqrt(1 + t^2) with t^2 = xi lambda.
  const double t = std::sqrt(xi * lambda);
  const double nrm = 1.0 / std::sqrt(1.0 + t * t);
  Eigen::Matrix2d R;
  R << nrm, -t * nrm, t * nrm, nrm;

  // Joint register [ancilla][select][principal], stored as 2*S principal blocks.
  std::vector<CVec> psi(2 * S, CVec::Zero(dim));
  psi[0] = s.logical() / s.logical().norm();
  auto blk = [S](int e, Index sel) { return static_cast<std::size_t>(e * S + sel); };

  auto rotate_ancilla = [&](const Eigen::Matrix2d& g) {
    for (Index sel = 0; sel < S; ++sel) {
      const CVec a0 = psi[blk(0, sel)];
      const CVec a1 = psi[blk(1, sel)];
      psi[blk(0, sel)] = g(0, 0) * a0 + g(0, 1) * a1;
      psi[blk(1, sel)] = g(1, 0) * a0 + g(1, 1) * a1;
    }
  };
  auto select_op_on_branch1 = [&](const Eigen::MatrixXd& m) {
    std::vector<CVec> next(S, CVec::Zero(dim));
    for (Index row = 0; row < S; ++row) {
      for (Index col = 0; col < S; ++col) {
        if (m(row, col) != 0.0) next[row] += m(row, col) * psi[blk(1, col)];
      }
    }
    for (Index sel = 0; sel < S; ++sel) psi[blk(1, sel)] = std::move(next[sel]);
  };

  rotate_ancilla(R);
  select_op_on_branch1(prep);
  for (Index j = 0; j < K; ++j) psi[blk(1, j)] = U[j] * psi[blk(1, j)];
  select_op_on_branch1(prep.transpose());
  rotate_ancilla(sign == StepSign::Descent ? R : Eigen::Matrix2d(R.transpose()));

  const CVec& kept = psi[blk(0, 0)];
  out.success_prob = kept.squaredNorm();
  if (out.success_prob < 1e-12) {
    throw PostSelectionFailure("lcu_step_simulate: success probability below 1e-12");
  }
  CVec amps = CVec::Zero(s.dim());
  amps.head(dim) = kept / kept.norm();
  out.state = EncodedState(std::move(amps), s.logical_dim());
  return out;
}

}  // namespace qnom
