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

#include "qnom/pqc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnom/error.hpp"
#include "qnom/optimize.hpp"

namespace qnom {

namespace {

using std::numbers::pi;

inline Index bit_of(int n, int q) { return Index{1} << (n - 1 - q); }

void apply_1q(CVec& v, int n, int q, Complex m00, Complex m01, Complex m10, Complex m11) {
  const Index b = bit_of(n, q);
  const Index dim = v.size();
  for (Index i = 0; i < dim; ++i) {
    if (i & b) continue;
    const Complex a0 = v(i), a1 = v(i | b);
    v(i) = m00 * a0 + m01 * a1;
    v(i | b) = m10 * a0 + m11 * a1;
  }
}

// v <- cos(phi/2) v - i sin(phi/2) (P_a P_b) v for P in {X, Y, Z}.
void apply_2q_rotation(CVec& v, int n, int qa, int qb, char p, double phi) {
  const Index ba = bit_of(n, qa), bb = bit_of(n, qb);
  const double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
  const Index dim = v.size();
  if (p == 'Z') {
    const Complex plus(c, -s), minus(c, s);
    for (Index i = 0; i < dim; ++i) {
      const bool odd = ((i & ba) != 0) != ((i & bb) != 0);
      v(i) *= odd ? minus : plus;
    }
    return;
  }
  const Index mask = ba | bb;
  for (Index i = 0; i < dim; ++i) {
    const Index j = i ^ mask;
    if (j < i) continue;
    // (PP)|i> = ph_i |j>, (PP)|j> = ph_j |i>.
    Complex ph_i = 1.0, ph_j = 1.0;
    if (p == 'Y') {
      const bool ia = i & ba, ib = i & bb;
      ph_i = (ia ? -kI : kI) * (ib ? -kI : kI);
      ph_j = (ia ? kI : -kI) * (ib ? kI : -kI);
    }
    const Complex vi = v(i), vj = v(j);
    v(i) = c * vi - kI * s * ph_j * vj;
    v(j) = c * vj - kI * s * ph_i * vi;
  }
}

double gate_angle(const Gate& g, const ParamVector& theta) {
  if (g.param_index < 0) return 0.0;
  return g.scale * theta[static_cast<std::size_t>(g.param_index)];
}

// Applies one gate at explicit angle phi; `adjoint` negates phi (H is self-inverse).
void apply_one(const Circuit& c, const Gate& g, double phi, CVec& v) {
  const int n = c.n_qubits;
  const double ch = std::cos(0.5 * phi), sh = std::sin(0.5 * phi);
  switch (g.kind) {
    case GateKind::RX:
      apply_1q(v, n, g.qubits[0], ch, Complex(0, -sh), Complex(0, -sh), ch);
      break;
    case GateKind::RY:
      apply_1q(v, n, g.qubits[0], ch, -sh, sh, ch);
      break;
    case GateKind::RZ:
      apply_1q(v, n, g.qubits[0], Complex(ch, -sh), 0.0, 0.0, Complex(ch, sh));
      break;
    case GateKind::RXX: apply_2q_rotation(v, n, g.qubits[0], g.qubits[1], 'X', phi); break;
    case GateKind::RYY: apply_2q_rotation(v, n, g.qubits[0], g.qubits[1], 'Y', phi); break;
    case GateKind::RZZ: apply_2q_rotation(v, n, g.qubits[0], g.qubits[1], 'Z', phi); break;
    case GateKind::EXP_HC: {
      Graph gr{n, c.cost_edges};
      for (Index i = 0; i < v.size(); ++i) {
        const double cut = gr.cut_value(static_cast<unsigned long long>(i));
        v(i) *= std::polar(1.0, -phi * cut);
      }
      break;
    }
    case GateKind::EXP_HB: {
      const double cc = std::cos(phi), ss = std::sin(phi);
      for (int q = 0; q < n; ++q) apply_1q(v, n, q, cc, Complex(0, -ss), Complex(0, -ss), cc);
      break;
    }
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      for (int q : g.qubits) apply_1q(v, n, q, r, r, r, -r);
      break;
    }
  }
}

void check_theta(const Circuit& c, const ParamVector& theta) {
  if (static_cast<int>(theta.size()) != c.n_params) {
    throw DimensionMismatch("circuit: parameter vector length != n_params");
  }
}

std::vector<int> all_sites(int n) {
  std::vector<int> q(n);
  for (int i = 0; i < n; ++i) q[i] = i;
  return q;
}

// <obs> with per-gate angle offsets.
double shifted_expectation(const Circuit& c, const ParamVector& theta, const CMat& obs,
                           std::size_t gate, double offset) {
  CVec v = CVec::Zero(Index{1} << c.n_qubits);
  v(0) = 1.0;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    apply_one(c, g, gate_angle(g, theta) + (i == gate ? offset : 0.0), v);
  }
  return expectation(v, obs).real();
}

}  // namespace

std::string to_string(GateKind k) {
  switch (k) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::RXX: return "RXX";
    case GateKind::RYY: return "RYY";
    case GateKind::RZZ: return "RZZ";
    case GateKind::EXP_HC: return "EXP_HC";
    case GateKind::EXP_HB: return "EXP_HB";
    case GateKind::H: return "H";
  }
  return "?";
}

GateKind parse_gate_kind(const std::string& s) {
  for (GateKind k : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::RXX, GateKind::RYY,
                     GateKind::RZZ, GateKind::EXP_HC, GateKind::EXP_HB, GateKind::H}) {
    if (to_string(k) == s) return k;
  }
  throw InvalidArgument("unknown gate kind '" + s + "'");
}

bool is_pauli_rotation(GateKind k) {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ || k == GateKind::RXX ||
         k == GateKind::RYY || k == GateKind::RZZ;
}

int gate_arity(GateKind k) {
  switch (k) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ: return 1;
    case GateKind::RXX:
    case GateKind::RYY:
    case GateKind::RZZ: return 2;
    default: return 0;
  }
}

void Circuit::validate() const {
  if (n_qubits < 1 || n_qubits > 20) throw InvalidArgument("Circuit: n_qubits out of range");
  if (n_params < 0) throw InvalidArgument("Circuit: negative n_params");
  for (const auto& g : gates) {
    const int ar = gate_arity(g.kind);
    if (ar > 0 && static_cast<int>(g.qubits.size()) != ar) {
      throw InvalidArgument("Circuit: " + to_string(g.kind) + " has wrong site count");
    }
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      if (g.qubits[i] < 0 || g.qubits[i] >= n_qubits) throw InvalidArgument("Circuit: site out of range");
      for (std::size_t j = 0; j < i; ++j) {
        if (g.qubits[i] == g.qubits[j]) throw InvalidArgument("Circuit: repeated site in a gate");
      }
    }
    if (g.kind == GateKind::H) {
      if (g.param_index != -1) throw InvalidArgument("Circuit: H takes no parameter");
    } else if (g.param_index < 0 || g.param_index >= n_params) {
      throw InvalidArgument("Circuit: param_index out of range");
    }
    if (!std::isfinite(g.scale)) throw InvalidArgument("Circuit: non-finite scale");
  }
  Graph{n_qubits, cost_edges}.validate();
}

void Circuit::append(const Circuit& layer) {
  if (layer.n_qubits != n_qubits) throw DimensionMismatch("Circuit::append: register sizes differ");
  for (Gate g : layer.gates) {
    if (g.param_index >= 0) g.param_index += n_params;
    gates.push_back(std::move(g));
  }
  n_params += layer.n_params;
  if (cost_edges.empty()) cost_edges = layer.cost_edges;
}

int Circuit::add_param_gate(GateKind kind, std::vector<int> qubits, double scale) {
  gates.push_back(Gate{kind, std::move(qubits), n_params, scale});
  return n_params++;
}

void apply_gates(const Circuit& c, const ParamVector& theta, CVec& state, std::size_t begin,
                 std::size_t end) {
  check_theta(c, theta);
  if (state.size() != (Index{1} << c.n_qubits)) throw DimensionMismatch("apply_gates: state size");
  end = std::min(end, c.gates.size());
  for (std::size_t i = begin; i < end; ++i) apply_one(c, c.gates[i], gate_angle(c.gates[i], theta), state);
}

void apply_gates_adjoint(const Circuit& c, const ParamVector& theta, CVec& state, std::size_t begin,
                         std::size_t end) {
  check_theta(c, theta);
  if (state.size() != (Index{1} << c.n_qubits)) throw DimensionMismatch("apply_gates_adjoint: state size");
  end = std::min(end, c.gates.size());
  for (std::size_t i = end; i > begin; --i) {
    const Gate& g = c.gates[i - 1];
    apply_one(c, g, -gate_angle(g, theta), state);
  }
}

EncodedState apply_circuit(const Circuit& c, const ParamVector& theta, const EncodedState& s_in) {
  CVec v = s_in.amps();
  apply_gates(c, theta, v, 0, c.gates.size());
  v /= v.norm();
  return EncodedState(std::move(v), s_in.dim());
}

CVec circuit_state(const Circuit& c, const ParamVector& theta) {
  CVec v = CVec::Zero(Index{1} << c.n_qubits);
  v(0) = 1.0;
  apply_gates(c, theta, v, 0, c.gates.size());
  return v;
}

CMat gate_generator(const Circuit& c, const Gate& g) {
  const int n = c.n_qubits;
  auto pauli_on = [n](const std::vector<int>& qs, Pauli p) {
    PauliString ps;
    ps.factors.assign(n, Pauli::I);
    for (int q : qs) ps.factors[q] = p;
    return pauli_matrix(ps);
  };
  switch (g.kind) {
    case GateKind::RX:
    case GateKind::RXX: return 0.5 * pauli_on(g.qubits, Pauli::X);
    case GateKind::RY:
    case GateKind::RYY: return 0.5 * pauli_on(g.qubits, Pauli::Y);
    case GateKind::RZ:
    case GateKind::RZZ: return 0.5 * pauli_on(g.qubits, Pauli::Z);
    case GateKind::EXP_HC: return pauli_matrix(maxcut_hamiltonian(Graph{n, c.cost_edges}), n);
    case GateKind::EXP_HB: {
      CMat m = CMat::Zero(Index{1} << n, Index{1} << n);
      for (int q = 0; q < n; ++q) m += pauli_on({q}, Pauli::X);
      return m;
    }
    case GateKind::H: break;
  }
  throw InvalidArgument("gate_generator: H has no generator");
}

double transfer_infidelity(const Circuit& c, const ParamVector& theta, const CVec& initial,
                           const CVec& target) {
  CVec v = initial;
  apply_gates(c, theta, v, 0, c.gates.size());
  const double f = std::norm(target.dot(v));
  return std::clamp(1.0 - f, 0.0, 1.0);
}

double fidelity_indicator(const Circuit& c, const ParamVector& theta, const EncodedState& target) {
  if (target.dim() != (Index{1} << c.n_qubits)) throw DimensionMismatch("fidelity_indicator: size");
  CVec zero = CVec::Zero(target.dim());
  zero(0) = 1.0;
  return transfer_infidelity(c, theta, zero, target.amps());
}

ParamFit optimize_transfer(const Circuit& c, const ParamVector& theta0, const CVec& initial,
                           const CVec& target, int budget, std::uint64_t seed) {
  if (budget < 1) throw InvalidArgument("optimize_params: budget must be at least 1");
  check_theta(c, theta0);
  NelderMeadOptions opt;
  opt.max_evals = budget;
  opt.seed = seed;
  opt.initial_step = 0.3;
  opt.target = 1e-14;
  const auto res = nelder_mead(
      [&](const std::vector<double>& x) { return transfer_infidelity(c, x, initial, target); }, theta0, opt);
  return {res.x, res.f, res.evals};
}

ParamFit optimize_params(const Circuit& c, const ParamVector& theta0, const EncodedState& target,
                         int budget, std::uint64_t seed) {
  CVec zero = CVec::Zero(target.dim());
  zero(0) = 1.0;
  return optimize_transfer(c, theta0, zero, target.amps(), budget, seed);
}

double circuit_expectation(const Circuit& c, const ParamVector& theta, const CMat& obs) {
  const CVec v = circuit_state(c, theta);
  return expectation(v, obs).real();
}

std::vector<double> ansatz_gradient(const Circuit& c, const ParamVector& theta, const CMat& obs) {
  check_theta(c, theta);
  std::vector<double> grad(c.n_params, 0.0);
  constexpr double h = 1e-5;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    if (g.param_index < 0) continue;
    double d_phi = 0.0;
    if (is_pauli_rotation(g.kind)) {
      d_phi = 0.5 * (shifted_expectation(c, theta, obs, i, 0.5 * pi) -
                     shifted_expectation(c, theta, obs, i, -0.5 * pi));
    } else {
      d_phi = (shifted_expectation(c, theta, obs, i, h) - shifted_expectation(c, theta, obs, i, -h)) /
              (2.0 * h);
    }
    grad[static_cast<std::size_t>(g.param_index)] += g.scale * d_phi;
  }
  return grad;
}

std::vector<double> expectation_gradient_fd(const Circuit& c, const ParamVector& theta,
                                            const CMat& obs, double h) {
  std::vector<double> grad(c.n_params);
  ParamVector t = theta;
  for (int k = 0; k < c.n_params; ++k) {
    t[k] = theta[k] + h;
    const double fp = circuit_expectation(c, t, obs);
    t[k] = theta[k] - h;
    const double fm = circuit_expectation(c, t, obs);
    t[k] = theta[k];
    grad[k] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

std::string to_string(AnsatzId id) {
  switch (id) {
    case AnsatzId::QAOA1: return "QAOA1";
    case AnsatzId::QAOA1_RX: return "QAOA1_RX";
    case AnsatzId::HWE: return "HWE";
    case AnsatzId::HWE_RY: return "HWE_RY";
  }
  return "?";
}

AnsatzId parse_ansatz_id(const std::string& s) {
  for (AnsatzId id : all_ansatz_ids()) {
    if (to_string(id) == s) return id;
  }
  throw InvalidArgument("unknown ansatz '" + s + "'");
}

const std::vector<AnsatzId>& all_ansatz_ids() {
  static const std::vector<AnsatzId> ids{AnsatzId::QAOA1, AnsatzId::QAOA1_RX, AnsatzId::HWE,
                                         AnsatzId::HWE_RY};
  return ids;
}

Circuit ansatz_library(AnsatzId id, const Graph& g) {
  g.validate();
  Circuit c;
  c.n_qubits = g.n;
  c.cost_edges = g.edges;
  const std::vector<int> all = all_sites(g.n);
  switch (id) {
    case AnsatzId::QAOA1:
      c.n_params = 2;  // beta, gamma
      c.gates.push_back({GateKind::EXP_HC, all, 1, 1.0});
      c.gates.push_back({GateKind::EXP_HB, all, 0, 1.0});
      break;
    case AnsatzId::QAOA1_RX:
      c.n_params = 3;  // beta, alpha, gamma
      c.gates.push_back({GateKind::EXP_HC, all, 2, 1.0});
      for (int q : all) c.gates.push_back({GateKind::RX, {q}, 1, 1.0});
      c.gates.push_back({GateKind::EXP_HB, all, 0, 1.0});
      break;
    case AnsatzId::HWE:
    case AnsatzId::HWE_RY: {
      if (g.n != 4) throw InvalidArgument("ansatz_library: HWE circuits need 4 sites");
      c.n_params = id == AnsatzId::HWE ? 4 : 5;  // alpha, beta, gamma, eta [, phi]
      c.gates.push_back({GateKind::RXX, {0, 1}, 3, 2.0});
      c.gates.push_back({GateKind::RXX, {2, 3}, 2, 2.0});
      if (id == AnsatzId::HWE_RY) {
        for (int q : all) c.gates.push_back({GateKind::RY, {q}, 4, 1.0});
      }
      c.gates.push_back({GateKind::RZZ, {1, 2}, 1, 2.0});
      c.gates.push_back({GateKind::RZZ, {0, 3}, 0, 2.0});
      break;
    }
  }
  c.validate();
  return c;
}

Circuit with_plus_reference(const Circuit& c) {
  Circuit out = c;
  out.gates.insert(out.gates.begin(), Gate{GateKind::H, all_sites(c.n_qubits), -1, 1.0});
  out.validate();
  return out;
}

}  // namespace qnom
