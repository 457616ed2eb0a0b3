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

#include "qnom/qcore.hpp"

#include <cmath>

#include "qnom/error.hpp"

namespace qnom {

namespace {

Index ipow(Index base, int exp) {
  Index r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVec kron(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

CVec kron_power(const CVec& v, int p) {
  if (p < 0) throw InvalidArgument("kron_power: negative exponent");
  CVec out = CVec::Ones(1);
  for (int i = 0; i < p; ++i) out = kron(out, v);
  return out;
}

CMat partial_trace_keep_first(const CMat& m, Index sub_dim, int p) {
  if (sub_dim < 1 || p < 1) {
    throw InvalidArgument("partial_trace_keep_first: sub_dim and p must be positive");
  }
  const Index rest = ipow(sub_dim, p - 1);
  if (m.rows() != sub_dim * rest || m.cols() != sub_dim * rest) {
    throw DimensionMismatch("partial_trace_keep_first: operator is not (sub_dim^p)-square");
  }
  CMat out = CMat::Zero(sub_dim, sub_dim);
  for (Index i = 0; i < sub_dim; ++i) {
    for (Index j = 0; j < sub_dim; ++j) {
      Complex acc = 0.0;
      for (Index r = 0; r < rest; ++r) acc += m(i * rest + r, j * rest + r);
      out(i, j) = acc;
    }
  }
  return out;
}

CMat permutation_operator(int p, int k, Index sub_dim) {
  if (p < 1 || k < 1 || k > p) {
    throw InvalidArgument("permutation_operator: need 1 <= k <= p");
  }
  if (sub_dim < 1) throw InvalidArgument("permutation_operator: sub_dim must be positive");
  const Index dim = ipow(sub_dim, p);
  CMat out = CMat::Zero(dim, dim);
  std::vector<Index> digits(p);
  for (Index col = 0; col < dim; ++col) {
    Index rem = col;
    for (int s = p - 1; s >= 0; --s) {
      digits[s] = rem % sub_dim;
      rem /= sub_dim;
    }
    std::swap(digits[0], digits[k - 1]);
    Index row = 0;
    for (int s = 0; s < p; ++s) row = row * sub_dim + digits[s];
    out(row, col) = 1.0;
  }
  return out;
}

PauliString PauliString::parse(std::string_view label, Complex weight) {
  PauliString ps;
  ps.weight = weight;
  ps.factors.reserve(label.size());
  for (char c : label) {
    switch (c) {
      case 'I': ps.factors.push_back(Pauli::I); break;
      case 'X': ps.factors.push_back(Pauli::X); break;
      case 'Y': ps.factors.push_back(Pauli::Y); break;
      case 'Z': ps.factors.push_back(Pauli::Z); break;
      default:
        throw InvalidArgument(std::string("PauliString::parse: bad factor '") + c + "'");
    }
  }
  return ps;
}

std::string PauliString::label() const {
  std::string s;
  s.reserve(factors.size());
  for (Pauli f : factors) s.push_back(static_cast<char>(f));
  return s;
}

std::size_t PauliSum::sites() const {
  if (terms.empty()) return 0;
  const std::size_t n = terms.front().sites();
  for (const auto& t : terms) {
    if (t.sites() != n) throw DimensionMismatch("PauliSum: terms of different length");
  }
  return n;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& t : terms) {
    if (std::abs(t.weight.imag()) > tol) return false;
  }
  return true;
}

CMat pauli_matrix(const PauliString& ps) {
  const int n = static_cast<int>(ps.sites());
  const Index dim = Index{1} << n;
  Index xmask = 0;
  for (int q = 0; q < n; ++q) {
    const Pauli f = ps.factors[q];
    if (f == Pauli::X || f == Pauli::Y) xmask |= Index{1} << (n - 1 - q);
  }
  CMat out = CMat::Zero(dim, dim);
  for (Index col = 0; col < dim; ++col) {
    Complex amp = ps.weight;
    for (int q = 0; q < n; ++q) {
      const bool bit = (col >> (n - 1 - q)) & 1;
      switch (ps.factors[q]) {
        case Pauli::I:
        case Pauli::X: break;
        case Pauli::Y: amp *= bit ? -kI : kI; break;
        case Pauli::Z: if (bit) amp = -amp; break;
      }
    }
    out(col ^ xmask, col) = amp;
  }
  return out;
}

CMat pauli_matrix(const PauliSum& sum, std::size_t n_sites) {
  const Index dim = Index{1} << n_sites;
  CMat out = CMat::Zero(dim, dim);
  for (const auto& t : sum.terms) {
    if (t.sites() != n_sites) throw DimensionMismatch("pauli_matrix: term length != n_sites");
    out += pauli_matrix(t);
  }
  return out;
}

Complex inner(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("inner: size mismatch");
  return a.dot(b);  // Eigen conjugates the left operand.
}

Complex expectation(const CVec& state, const CMat& op) {
  if (op.rows() != state.size() || op.cols() != state.size()) {
    throw DimensionMismatch("expectation: operator/state size mismatch");
  }
  return state.dot(op * state);
}

double fidelity(const CVec& a, const CVec& b) {
  return std::norm(inner(a, b));
}

double hermiticity_defect(const CMat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("hermiticity_defect: not square");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool all_finite(const CVec& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  }
  return true;
}

bool all_finite(const CMat& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

int qubit_count(Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0) {
    throw InvalidArgument("qubit_count: dimension is not a power of two");
  }
  int n = 0;
  while ((Index{1} << n) < dim) ++n;
  return n;
}

Index next_pow2(Index n) {
  Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace qnom
