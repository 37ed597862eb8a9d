// Copyright 2026 The nil-qem Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nil/dense_sim.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nil {

namespace {

const cd kIPow[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};

void apply_local(std::vector<cd>& v, const Eigen::MatrixXcd& u, const int* bits, int k) {
  uint64_t mask = 0;
  for (int i = 0; i < k; ++i) mask |= uint64_t{1} << bits[i];
  int d = 1 << k;
  uint64_t offs[4];
  for (int j = 0; j < d; ++j) {
    offs[j] = 0;
    for (int i = 0; i < k; ++i)
      if ((j >> i) & 1) offs[j] |= uint64_t{1} << bits[i];
  }
  cd in[4], out[4];
  const uint64_t size = v.size();
  for (uint64_t base = 0; base < size; ++base) {
    if (base & mask) continue;
    for (int j = 0; j < d; ++j) in[j] = v[base | offs[j]];
    for (int r = 0; r < d; ++r) {
      cd s = 0;
      for (int c = 0; c < d; ++c) s += u(r, c) * in[c];
      out[r] = s;
    }
    for (int j = 0; j < d; ++j) v[base | offs[j]] = out[j];
  }
}

uint64_t mask_of(const std::vector<uint64_t>& w) { return w.empty() ? 0 : w[0]; }

void check_cap(int n, int cap, const char* who) {
  if (n > cap) throw std::length_error(std::string(who) + ": qubit count exceeds dense simulation cap");
}

// Pauli code of a (row bit, column bit) slot after the basis transform.
constexpr int kSlotCode[4] = {0, 1, 3, 2};

}  // namespace

StateVector::StateVector(int n) : n_(n) {
  check_cap(n, kStateVectorCap, "StateVector");
  amp_.assign(uint64_t{1} << n, cd(0));
  amp_[0] = 1;
}

void StateVector::apply_matrix(const Eigen::MatrixXcd& u, const int* qubits, int k) {
  apply_local(amp_, u, qubits, k);
}

void StateVector::apply(const Gate& g) { apply_matrix(gate_unitary(g), g.qubits.data(), g.arity()); }

double StateVector::expectation(const PauliString& p) const {
  uint64_t x = mask_of(p.xs), z = mask_of(p.zs);
  cd s = 0;
  for (uint64_t r = 0; r < amp_.size(); ++r) {
    cd t = std::conj(amp_[r ^ x]) * amp_[r];
    s += (std::popcount(r & z) & 1) ? -t : t;
  }
  s *= kIPow[(p.phase() + std::popcount(x & z)) & 3];
  return s.real();
}

double StateVector::expectation(const Observable& o) const {
  double s = 0;
  for (const auto& t : o.terms()) s += t.coeff * expectation(t.pauli);
  return s;
}

double StateVector::norm() const {
  double s = 0;
  for (const auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

DensityMatrix::DensityMatrix(int n) : n_(n) {
  check_cap(n, kDensityCap, "DensityMatrix");
  data_.assign(uint64_t{1} << (2 * n), cd(0));
  data_[0] = 1;
}

DensityMatrix DensityMatrix::from_observable(const Observable& o) {
  DensityMatrix m(o.n_qubits());
  m.data_[0] = 0;
  const uint64_t d = m.dim();
  for (const auto& t : o.terms()) {
    uint64_t x = mask_of(t.pauli.xs), z = mask_of(t.pauli.zs);
    cd ph = t.coeff * kIPow[(t.pauli.phase() + std::popcount(x & z)) & 3];
    for (uint64_t c = 0; c < d; ++c) m.at(c ^ x, c) += (std::popcount(c & z) & 1) ? -ph : ph;
  }
  return m;
}

void DensityMatrix::conjugate(const Eigen::MatrixXcd& u, const int* qubits, int k) {
  int rows[2], cols[2];
  for (int i = 0; i < k; ++i) {
    rows[i] = qubits[i] + n_;
    cols[i] = qubits[i];
  }
  apply_local(data_, u, rows, k);
  apply_local(data_, u.conjugate(), cols, k);
}

void DensityMatrix::apply(const Gate& g) { conjugate(gate_unitary(g), g.qubits.data(), g.arity()); }

void DensityMatrix::apply_adjoint(const Gate& g) {
  conjugate(gate_unitary(g).adjoint(), g.qubits.data(), g.arity());
}

void DensityMatrix::apply_channel(const PauliChannel& ch) {
  if (ch.is_identity()) return;
  const int k = ch.k();
  const auto& q = ch.qubits();
  const auto& f = ch.eigenvalues();
  for (int v : q) check_cap(v + 1, n_, "apply_channel");
  const uint64_t size = data_.size();
  // Per support qubit, map each 2x2 block to Pauli coordinates (I, X, Y', Z),
  // scale by the channel eigenvalues, and map back.
  for (int i = 0; i < k; ++i) {
    uint64_t rb = uint64_t{1} << (q[i] + n_), cb = uint64_t{1} << q[i];
    for (uint64_t idx = 0; idx < size; ++idx) {
      if (idx & (rb | cb)) continue;
      cd a = data_[idx], b = data_[idx | cb], c = data_[idx | rb], d = data_[idx | rb | cb];
      data_[idx] = a + d;
      data_[idx | rb | cb] = a - d;
      data_[idx | cb] = b + c;
      data_[idx | rb] = b - c;
    }
  }
  for (uint64_t idx = 0; idx < size; ++idx) {
    int local = 0;
    for (int i = 0; i < k; ++i) {
      int slot = (((idx >> (q[i] + n_)) & 1) << 1) | ((idx >> q[i]) & 1);
      local |= kSlotCode[slot] << (2 * i);
    }
    data_[idx] *= f[local];
  }
  for (int i = 0; i < k; ++i) {
    uint64_t rb = uint64_t{1} << (q[i] + n_), cb = uint64_t{1} << q[i];
    for (uint64_t idx = 0; idx < size; ++idx) {
      if (idx & (rb | cb)) continue;
      cd tI = data_[idx], tZ = data_[idx | rb | cb], tX = data_[idx | cb], tY = data_[idx | rb];
      data_[idx] = 0.5 * (tI + tZ);
      data_[idx | rb | cb] = 0.5 * (tI - tZ);
      data_[idx | cb] = 0.5 * (tX + tY);
      data_[idx | rb] = 0.5 * (tX - tY);
    }
  }
}

double DensityMatrix::expectation(const PauliString& p) const {
  uint64_t x = mask_of(p.xs), z = mask_of(p.zs);
  cd s = 0;
  for (uint64_t r = 0; r < dim(); ++r) {
    cd t = at(r, r ^ x);
    s += (std::popcount(r & z) & 1) ? -t : t;
  }
  s *= kIPow[(p.phase() + std::popcount(x & z)) & 3];
  return s.real();
}

double DensityMatrix::expectation(const Observable& o) const {
  double s = 0;
  for (const auto& t : o.terms()) s += t.coeff * expectation(t.pauli);
  return s;
}

cd DensityMatrix::trace() const {
  cd s = 0;
  for (uint64_t r = 0; r < dim(); ++r) s += at(r, r);
  return s;
}

double DensityMatrix::flipped_overlap(const DensityMatrix& obs, int q, char p) const {
  uint64_t bit = uint64_t{1} << q;
  uint64_t x = (p == 'X' || p == 'Y') ? bit : 0;
  uint64_t z = (p == 'Z' || p == 'Y') ? bit : 0;
  const uint64_t d = dim();
  double s = 0;
  for (uint64_t r = 0; r < d; ++r) {
    uint64_t rs = r ^ x;
    bool sr = (rs & z) != 0;
    for (uint64_t c = 0; c < d; ++c) {
      uint64_t cs = c ^ x;
      bool neg = sr ^ ((cs & z) != 0);
      // Re(conj(O_rc) * M_rc) with O Hermitian.
      double t = (std::conj(obs.at(r, c)) * at(rs, cs)).real();
      s += neg ? -t : t;
    }
  }
  return s;
}

double DensityMatrix::hermiticity_error() const {
  double e = 0;
  for (uint64_t r = 0; r < dim(); ++r)
    for (uint64_t c = 0; c < dim(); ++c) e = std::max(e, std::abs(at(r, c) - std::conj(at(c, r))));
  return e;
}

Eigen::MatrixXcd DensityMatrix::to_matrix() const {
  Eigen::MatrixXcd m(dim(), dim());
  for (uint64_t r = 0; r < dim(); ++r)
    for (uint64_t c = 0; c < dim(); ++c) m(r, c) = at(r, c);
  return m;
}

double ideal_expectation(const Circuit& c, const Observable& o) {
  if (o.n_qubits() != c.n_qubits) throw std::invalid_argument("ideal_expectation: width mismatch");
  StateVector sv(c.n_qubits);
  for (const auto& g : c.gates) sv.apply(g);
  return sv.expectation(o);
}

DensityMatrix simulate_density(const NoisyCircuit& nc) {
  DensityMatrix rho(nc.n_qubits);
  for (std::size_t i = 0; i < nc.gates.size(); ++i) {
    rho.apply(nc.gates[i]);
    rho.apply_channel(nc.channels[i]);
  }
  return rho;
}

double noisy_expectation(const NoisyCircuit& nc, const Observable& o) {
  if (o.n_qubits() != nc.n_qubits) throw std::invalid_argument("noisy_expectation: width mismatch");
  return simulate_density(nc).expectation(o);
}

std::vector<double> dense_insertion_values(const NoisyCircuit& nc, const Observable& o,
                                           const std::vector<DenseInsertion>& ins) {
  if (o.n_qubits() != nc.n_qubits) throw std::invalid_argument("dense_insertion_values: width mismatch");
  const int m = static_cast<int>(nc.gates.size());
  std::vector<std::vector<int>> at_gate(m);
  for (int i = 0; i < static_cast<int>(ins.size()); ++i) {
    if (ins[i].gate_index < 0 || ins[i].gate_index >= m)
      throw std::out_of_range("dense_insertion_values: gate index out of range");
    at_gate[ins[i].gate_index].push_back(i);
  }
  std::vector<std::optional<DensityMatrix>> pre(m);
  DensityMatrix rho(nc.n_qubits);
  for (int g = 0; g < m; ++g) {
    rho.apply(nc.gates[g]);
    if (!at_gate[g].empty()) pre[g] = rho;
    rho.apply_channel(nc.channels[g]);
  }
  std::vector<double> out(ins.size(), 0.0);
  DensityMatrix obs = DensityMatrix::from_observable(o);
  for (int g = m - 1; g >= 0; --g) {
    obs.apply_channel(nc.channels[g]);
    for (int i : at_gate[g]) out[i] = pre[g]->flipped_overlap(obs, ins[i].qubit, ins[i].pauli);
    pre[g].reset();
    obs.apply_adjoint(nc.gates[g]);
  }
  return out;
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

Eigen::MatrixXcd moment_operator(const std::array<double, 3>& n, double theta, int t) {
  const cd i(0, 1);
  Mat2 ns = n[0] * pauli_matrix('X') + n[1] * pauli_matrix('Y') + n[2] * pauli_matrix('Z');
  auto R = [&](double th) -> Mat2 { return std::cos(th / 2) * Mat2::Identity() - i * std::sin(th / 2) * ns; };
  Eigen::MatrixXcd k = kron(R(theta), R(-theta));
  Eigen::MatrixXcd m = k;
  for (int s = 1; s < t; ++s) m = kron(m, k);
  return m;
}

}  // namespace

double check_rotation_2design(const std::array<double, 3>& axis, int t,
                              const std::optional<std::vector<double>>& angles) {
  double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(norm - 1) > 1e-12) throw std::invalid_argument("check_rotation_2design: axis must be a unit vector");
  if (t < 1) throw std::invalid_argument("check_rotation_2design: t must be >= 1");
  std::vector<double> set = angles.value_or(std::vector<double>{0, std::numbers::pi / 2, std::numbers::pi,
                                                                3 * std::numbers::pi / 2});
  if (set.empty()) throw std::invalid_argument("check_rotation_2design: empty angle set");
  int dim = 1 << (2 * t);
  Eigen::MatrixXcd finite = Eigen::MatrixXcd::Zero(dim, dim);
  for (double th : set) finite += moment_operator(axis, th, t);
  finite /= static_cast<double>(set.size());
  const int kPoints = 64;
  Eigen::MatrixXcd integral = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 0; j < kPoints; ++j) integral += moment_operator(axis, 2 * std::numbers::pi * j / kPoints, t);
  integral /= static_cast<double>(kPoints);
  return (finite - integral).norm();
}

}  // namespace nil
