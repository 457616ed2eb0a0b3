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

#include "qnom/cost.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qnom/error.hpp"

namespace qnom {

namespace {

Index integer_root(Index n, int p) {
  const auto guess = static_cast<Index>(std::llround(std::pow(static_cast<double>(n), 1.0 / p)));
  for (Index r = std::max<Index>(1, guess - 1); r <= guess + 1; ++r) {
    Index acc = 1;
    for (int i = 0; i < p; ++i) acc *= r;
    if (acc == n) return r;
  }
  throw InvalidArgument("CostSpec: F dimension is not a perfect p-th power");
}

double real_part_checked(Complex value, const char* where) {
  if (std::abs(value.imag()) > 1e-10 * std::max(1.0, std::abs(value.real()))) {
    throw Error(std::string(where) + ": imaginary residue exceeds 1e-10; F is not Hermitian");
  }
  return value.real();
}

}  // namespace

CostSpec::CostSpec(CMat F, int p, CostMode mode, std::optional<std::vector<FactoredTerm>> factored)
    : p_(p), F_(std::move(F)), mode_(mode), factored_(std::move(factored)) {
  if (p_ < 1) throw InvalidArgument("CostSpec: p must be positive");
  if (F_.rows() != F_.cols()) throw InvalidArgument("CostSpec: F must be square");
  if (!all_finite(F_)) throw InvalidArgument("CostSpec: F has non-finite entries");
  sub_dim_ = integer_root(F_.rows(), p_);
  if (sub_dim_ < 2) throw InvalidArgument("CostSpec: need at least one variable");
  if (hermiticity_defect(F_) > 1e-12) throw InvalidArgument("CostSpec: F is not Hermitian");
  if (mode_ == CostMode::RawState && p_ != 1) {
    throw InvalidArgument("CostSpec: RawState mode requires p = 1");
  }
  if (factored_) {
    for (const auto& term : *factored_) {
      if (static_cast<int>(term.factors.size()) != p_) {
        throw InvalidArgument("CostSpec: factored term does not have p factors");
      }
    }
    const CMat dense = expand_factored(*factored_);
    if (dense.rows() != F_.rows() || (dense - F_).cwiseAbs().maxCoeff() > 1e-10) {
      throw InvalidArgument("CostSpec: factored form does not reproduce F");
    }
  }
  md_ = build_md(*this);
}

CMat expand_factored(const std::vector<FactoredTerm>& terms) {
  if (terms.empty()) throw InvalidArgument("expand_factored: no terms");
  CMat total;
  for (const auto& term : terms) {
    if (term.factors.empty()) throw InvalidArgument("expand_factored: empty term");
    CMat prod = pauli_matrix(term.factors.front());
    for (std::size_t j = 1; j < term.factors.size(); ++j) {
      prod = kron(prod, pauli_matrix(term.factors[j]));
    }
    if (total.size() == 0) {
      total = prod;
    } else {
      if (prod.rows() != total.rows()) throw DimensionMismatch("expand_factored: term sizes differ");
      total += prod;
    }
  }
  return total;
}

CostSpec CostSpec::from_factored(std::vector<FactoredTerm> terms, CostMode mode) {
  if (terms.empty()) throw InvalidArgument("CostSpec::from_factored: no terms");
  const int p = static_cast<int>(terms.front().factors.size());
  CMat F = expand_factored(terms);
  return CostSpec(std::move(F), p, mode, std::move(terms));
}

CostSpec CostSpec::from_pauli_sum(const PauliSum& h, CostMode mode) {
  const std::size_t n = h.sites();
  if (n == 0) throw InvalidArgument("CostSpec::from_pauli_sum: need a non-empty sum");
  if (!h.is_hermitian()) throw InvalidArgument("CostSpec::from_pauli_sum: complex weights");
  std::vector<FactoredTerm> terms;
  terms.reserve(h.terms.size());
  for (const auto& t : h.terms) terms.push_back(FactoredTerm{{t}});
  return CostSpec(pauli_matrix(h, n), 1, mode, std::move(terms));
}

double eval_cost(const CostSpec& spec, const CVec& v) {
  if (v.size() != spec.sub_dim()) throw DimensionMismatch("eval_cost: vector length != d+1");
  const CVec vp = kron_power(v, spec.p());
  return real_part_checked(vp.dot(spec.F() * vp), "eval_cost");
}

double eval_cost(const CostSpec& spec, const VariableVector& z) {
  return eval_cost(spec, z.values());
}

double state_cost(const CostSpec& spec, const EncodedState& s) {
  if (spec.mode() == CostMode::Affine) return eval_cost(spec, decode(s));
  return eval_cost(spec, s.logical());
}

double eval_cost_expanded(const VariableVector& z) {
  if (z.d() != 3) throw InvalidArgument("eval_cost_expanded: needs d = 3");
  const Complex z1 = z[1], z2 = z[2], z3 = z[3];
  const Complex c1 = std::conj(z1), c2 = std::conj(z2), c3 = std::conj(z3);
  const Complex f = z1 * z1 * c1 * c1 + z2 * z2 * c2 * c2 + z3 * z3 * c3 * c3 +
                    2.0 * (c1 * c1 * z2 * z2 + z1 * z1 * c2 * c2) +
                    6.0 * z1 * z2 * c1 * c2 - 2.0 * z1 * z3 * c1 * c3 - 2.0 * z2 * z3 * c2 * c3 -
                    2.0 * z1 * c1 - 2.0 * z2 * c2 + 6.0 * z3 * c3 +
                    2.0 * (z3 * z3 + c3 * c3) + 1.0;
  return real_part_checked(f, "eval_cost_expanded");
}

CostSpec quartic_xyz_cost() {
  std::vector<FactoredTerm> terms;
  for (const char* label : {"XX", "YY", "ZZ"}) {
    terms.push_back(FactoredTerm{{PauliString::parse(label), PauliString::parse(label)}});
  }
  return CostSpec::from_factored(std::move(terms), CostMode::Affine);
}

void Graph::validate() const {
  if (n < 1) throw InvalidArgument("Graph: need at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidArgument("Graph: vertex out of range");
    if (u == v) throw InvalidArgument("Graph: self-loop");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw InvalidArgument("Graph: duplicate edge");
    }
  }
}

Graph Graph::cycle(int n) {
  Graph g{n, {}};
  for (int i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  if (n == 2) g.edges.pop_back();
  g.validate();
  return g;
}

Graph Graph::complete(int n) {
  Graph g{n, {}};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
  }
  return g;
}

int Graph::cut_value(unsigned long long assignment) const {
  int cut = 0;
  for (auto [u, v] : edges) {
    const auto bu = (assignment >> (n - 1 - u)) & 1ULL;
    const auto bv = (assignment >> (n - 1 - v)) & 1ULL;
    if (bu != bv) ++cut;
  }
  return cut;
}

PauliSum maxcut_hamiltonian(const Graph& g) {
  g.validate();
  PauliSum h;
  for (auto [u, v] : g.edges) {
    PauliString id;
    id.factors.assign(g.n, Pauli::I);
    id.weight = 0.5;
    PauliString zz = id;
    zz.factors[u] = Pauli::Z;
    zz.factors[v] = Pauli::Z;
    zz.weight = -0.5;
    h.terms.push_back(std::move(id));
    h.terms.push_back(std::move(zz));
  }
  return h;
}

CMat build_md(const CostSpec& spec) {
  if (spec.p() == 1) return spec.F();
  CMat md = CMat::Zero(spec.F().rows(), spec.F().cols());
  for (int k = 1; k <= spec.p(); ++k) {
    const CMat pk = permutation_operator(spec.p(), k, spec.sub_dim());
    md += pk * spec.F() * pk;
  }
  return md;
}

CVec wirtinger_fd_raw(const CostSpec& spec, const CVec& v, double h) {
  if (!(h >= 1e-7 && h <= 1e-3)) throw InvalidArgument("wirtinger_fd: h must lie in [1e-7, 1e-3]");
  if (v.size() != spec.sub_dim()) throw DimensionMismatch("wirtinger_fd: vector length != d+1");
  CVec grad(v.size());
  CVec probe = v;
  for (Index i = 0; i < v.size(); ++i) {
    probe(i) = v(i) + h;
    const double fxp = eval_cost(spec, probe);
    probe(i) = v(i) - h;
    const double fxm = eval_cost(spec, probe);
    probe(i) = v(i) + Complex(0.0, h);
    const double fyp = eval_cost(spec, probe);
    probe(i) = v(i) - Complex(0.0, h);
    const double fym = eval_cost(spec, probe);
    probe(i) = v(i);
    grad(i) = 0.5 * Complex((fxp - fxm) / (2.0 * h), (fyp - fym) / (2.0 * h));
  }
  return grad;
}

CVec wirtinger_fd(const CostSpec& spec, const VariableVector& z, double h) {
  CVec full = wirtinger_fd_raw(spec, z.values(), h);
  if (spec.mode() == CostMode::Affine) return full.tail(z.d());
  return full;
}

namespace {

using nlohmann::json;

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw InvalidArgument("cost config: complex entries are numbers or [re, im] pairs");
}

CostMode parse_mode(const json& root) {
  const std::string m = root.value("mode", std::string("affine"));
  if (m == "affine") return CostMode::Affine;
  if (m == "raw" || m == "raw_state") return CostMode::RawState;
  throw InvalidArgument("cost config: unknown mode '" + m + "'");
}

}  // namespace

CostSpec load_cost_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("load_cost_spec: cannot open " + path);
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw InvalidArgument("load_cost_spec: " + std::string(e.what()));
  }
  const CostMode mode = parse_mode(root);

  if (root.contains("preset")) {
    const std::string preset = root["preset"].get<std::string>();
    if (preset == "quartic_xyz") return quartic_xyz_cost();
    throw InvalidArgument("load_cost_spec: unknown preset '" + preset + "'");
  }
  if (root.contains("factored")) {
    std::vector<FactoredTerm> terms;
    for (const auto& jt : root["factored"]) {
      FactoredTerm term;
      for (const auto& jf : jt) {
        term.factors.push_back(
            PauliString::parse(jf.at("pauli").get<std::string>(), parse_complex(jf.value("weight", json(1.0)))));
      }
      terms.push_back(std::move(term));
    }
    return CostSpec::from_factored(std::move(terms), mode);
  }
  const int p = root.value("p", 1);
  if (root.contains("pauli_terms")) {
    PauliSum sum;
    for (const auto& jt : root["pauli_terms"]) {
      sum.terms.push_back(
          PauliString::parse(jt.at("factors").get<std::string>(), parse_complex(jt.value("weight", json(1.0)))));
    }
    if (p == 1) return CostSpec::from_pauli_sum(sum, mode);
    return CostSpec(pauli_matrix(sum, sum.sites()), p, mode);
  }
  if (root.contains("matrix")) {
    const auto& rows = root["matrix"];
    const auto n = static_cast<Index>(rows.size());
    CMat F(n, n);
    for (Index i = 0; i < n; ++i) {
      if (static_cast<Index>(rows[i].size()) != n) throw InvalidArgument("load_cost_spec: matrix is not square");
      for (Index j = 0; j < n; ++j) F(i, j) = parse_complex(rows[i][j]);
    }
    return CostSpec(std::move(F), p, mode);
  }
  throw InvalidArgument("load_cost_spec: need one of preset, factored, pauli_terms, matrix");
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("load_graph: cannot open " + path);
  Graph g;
  int declared_n = -1;
  int max_vertex = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "n") {
      if (!(ls >> declared_n)) throw InvalidArgument("load_graph: bad 'n' header");
      continue;
    }
    int u = 0, v = 0;
    try {
      u = std::stoi(first);
    } catch (const std::exception&) {
      throw InvalidArgument("load_graph: bad line '" + line + "'");
    }
    if (!(ls >> v)) throw InvalidArgument("load_graph: bad line '" + line + "'");
    g.edges.emplace_back(u, v);
    max_vertex = std::max({max_vertex, u, v});
  }
  g.n = declared_n >= 0 ? declared_n : max_vertex + 1;
  g.validate();
  return g;
}

}  // namespace qnom
