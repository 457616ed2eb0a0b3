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

#include "qnom/vanish.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "qnom/error.hpp"

namespace qnom {

namespace {

double binomial_sigma(double b, long n) {
  const double p = std::clamp(b, 0.0, 1.0);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

void BoundExperiment::validate() const {
  if (d < 1) throw InvalidArgument("BoundExperiment: d must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("BoundExperiment: epsilon must lie in (0, 1)");
  if (samples < 1000) throw InvalidArgument("BoundExperiment: need at least 1000 samples");
  if (m < 1) throw InvalidArgument("BoundExperiment: m must be positive");
  if (!(C > 0.0)) throw InvalidArgument("BoundExperiment: C must be positive");
}

TailEstimate lemma1_mc(const BoundExperiment& e) {
  e.validate();
  std::mt19937_64 rng(e.seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(e.d)));
  Eigen::VectorXd u(e.d), v(e.d);
  long hits = 0;
  for (long s = 0; s < e.samples; ++s) {
    for (int i = 0; i < e.d; ++i) u(i) = normal(rng);
    for (int i = 0; i < e.d; ++i) v(i) = normal(rng);
    if (std::abs(u.dot(v)) >= e.epsilon) ++hits;
  }
  TailEstimate t;
  t.empirical_tail = static_cast<double>(hits) / static_cast<double>(e.samples);
  t.analytic_bound = 4.0 * std::exp(-e.d * e.epsilon * e.epsilon / 8.0);
  t.sigma = binomial_sigma(t.analytic_bound, e.samples);
  return t;
}

TailEstimate result1_mc(const BoundExperiment& e) {
  e.validate();
  std::mt19937_64 rng(e.seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(e.C / static_cast<double>(e.d)));
  auto draw = [&](CVec& x) {
    for (int i = 0; i < e.d; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      x(i) = Complex(re, im);
    }
  };
  CVec g(e.d), row(e.d);
  long hits = 0;
  for (long s = 0; s < e.samples; ++s) {
    draw(g);
    double acc = 0.0;
    for (int i = 0; i < e.m; ++i) {
      draw(row);
      acc += std::norm(row.dot(g));
    }
    if (std::sqrt(acc) >= e.epsilon) ++hits;
  }
  TailEstimate t;
  t.empirical_tail = static_cast<double>(hits) / static_cast<double>(e.samples);
  t.analytic_bound = 8.0 * e.m * std::exp(-e.d * e.epsilon * e.epsilon / (128.0 * e.C * e.C * e.m));
  t.sigma = binomial_sigma(t.analytic_bound, e.samples);
  return t;
}

std::vector<GridRow> concentration_grid(const std::vector<int>& ds, const std::vector<double>& eps,
                                        const std::vector<int>& ms, long samples, std::uint64_t seed) {
  std::vector<GridRow> rows;
  std::uint64_t cell = 0;
  for (int d : ds) {
    for (double e : eps) {
      BoundExperiment be;
      be.d = d;
      be.epsilon = e;
      be.samples = samples;
      be.seed = seed + cell++;
      const auto l = lemma1_mc(be);
      rows.push_back({"lemma1", d, e, 0, l.empirical_tail, l.analytic_bound, l.sigma});
      for (int m : ms) {
        be.m = m;
        be.seed = seed + cell++;
        const auto r = result1_mc(be);
        rows.push_back({"result1", d, e, m, r.empirical_tail, r.analytic_bound, r.sigma});
      }
    }
  }
  return rows;
}

void write_grid_csv(const std::string& path, const std::vector<GridRow>& rows) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("write_grid_csv: cannot open " + path);
  out.precision(17);
  out << "kind,d,epsilon,m,empirical,bound,sigma\n";
  for (const auto& r : rows) {
    out << r.kind << ',' << r.d << ',' << r.epsilon << ',' << r.m << ',' << r.empirical << ',' << r.bound << ','
        << r.sigma << '\n';
  }
}

BpGradient bp_gradient_check(const Circuit& t_circuit, const ParamVector& alpha, int k, const EncodedState& z,
                             const EncodedState& z_prime, double h) {
  if (k < 0 || k >= t_circuit.n_params) throw InvalidArgument("bp_gradient_check: k out of range");
  if (z.dim() != (Index{1} << t_circuit.n_qubits) || z_prime.dim() != z.dim()) {
    throw DimensionMismatch("bp_gradient_check: state sizes do not match the circuit");
  }
  const CMat rho_p = z_prime.amps() * z_prime.amps().adjoint();
  const std::size_t n_gates = t_circuit.gates.size();
  BpGradient out;
  Complex acc = 0.0;
  for (std::size_t gi = 0; gi < n_gates; ++gi) {
    const Gate& g = t_circuit.gates[gi];
    if (g.param_index != k) continue;
    CVec psi = z.amps();
    apply_gates(t_circuit, alpha, psi, 0, gi + 1);
    // X = A^dagger rho' A with A the gates after g.
    CMat A = CMat::Identity(z.dim(), z.dim());
    for (Index col = 0; col < A.cols(); ++col) {
      CVec e = A.col(col);
      apply_gates(t_circuit, alpha, e, gi + 1, n_gates);
      A.col(col) = e;
    }
    const CMat X = A.adjoint() * rho_p * A;
    const CMat V = -g.scale * gate_generator(t_circuit, g);
    const CMat comm = V * X - X * V;
    acc += kI * psi.dot(comm * psi);
  }
  out.analytic = acc.real();

  auto c2 = [&](const ParamVector& a) {
    return transfer_infidelity(t_circuit, a, z.amps(), z_prime.amps());
  };
  ParamVector a = alpha;
  a[k] = alpha[k] + h;
  const double fp = c2(a);
  a[k] = alpha[k] - h;
  const double fm = c2(a);
  out.finite_diff = (fp - fm) / (2.0 * h);
  return out;
}

}  // namespace qnom
