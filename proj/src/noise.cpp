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

#include "nil/noise.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace nil {

int local_symplectic(int a, int b) {
  unsigned ax = a & 0x5, az = (a >> 1) & 0x5, bx = b & 0x5, bz = (b >> 1) & 0x5;
  return std::popcount((ax & bz) ^ (az & bx)) & 1;
}

namespace {

std::vector<double> to_eigenvalues(const std::vector<double>& p) {
  int np = static_cast<int>(p.size());
  std::vector<double> f(np, 0.0);
  for (int b = 0; b < np; ++b)
    for (int a = 0; a < np; ++a) f[b] += local_symplectic(a, b) ? -p[a] : p[a];
  return f;
}

void check_support(const std::vector<int>& q) {
  if (q.size() != 1 && q.size() != 2) throw std::invalid_argument("PauliChannel: support must be 1 or 2 qubits");
  for (int v : q)
    if (v < 0) throw std::invalid_argument("PauliChannel: negative qubit");
  if (q.size() == 2 && q[0] == q[1]) throw std::invalid_argument("PauliChannel: repeated qubit");
}

}  // namespace

PauliChannel::PauliChannel(std::vector<int> qubits, std::vector<double> probs)
    : qubits_(std::move(qubits)), probs_(std::move(probs)) {
  check_support(qubits_);
  if (probs_.size() != (std::size_t{1} << (2 * qubits_.size())))
    throw std::invalid_argument("PauliChannel: probability vector has wrong length");
  double s = 0;
  for (std::size_t a = 1; a < probs_.size(); ++a) {
    if (!(probs_[a] >= -1e-12)) throw std::invalid_argument("PauliChannel: negative probability");
    if (probs_[a] < 0) probs_[a] = 0;
    s += probs_[a];
  }
  if (s > 1 + 1e-12) throw std::invalid_argument("PauliChannel: probabilities exceed 1");
  probs_[0] = std::max(0.0, 1.0 - s);
  eig_ = to_eigenvalues(probs_);
}

PauliChannel PauliChannel::identity(std::vector<int> qubits) {
  std::vector<double> p(std::size_t{1} << (2 * qubits.size()), 0.0);
  p[0] = 1.0;
  return PauliChannel(std::move(qubits), std::move(p));
}

PauliChannel PauliChannel::depolarizing(std::vector<int> qubits, double p) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("depolarizing: p must be in [0, 1]");
  std::size_t np = std::size_t{1} << (2 * qubits.size());
  std::vector<double> probs(np, p / static_cast<double>(np - 1));
  probs[0] = 1 - p;
  return PauliChannel(std::move(qubits), std::move(probs));
}

PauliChannel PauliChannel::from_eigenvalues(std::vector<int> qubits, const std::vector<double>& f) {
  int np = static_cast<int>(f.size());
  if (np != (1 << (2 * qubits.size()))) throw std::invalid_argument("from_eigenvalues: wrong length");
  std::vector<double> p(np, 0.0);
  for (int a = 0; a < np; ++a) {
    double s = 0;
    for (int b = 0; b < np; ++b) s += local_symplectic(a, b) ? -f[b] : f[b];
    p[a] = s / np;
    if (a > 0 && p[a] < 0 && p[a] >= -1e-12) p[a] = 0;
  }
  return PauliChannel(std::move(qubits), std::move(p));
}

double PauliChannel::eigenvalue_for(const PauliString& p) const {
  return eig_[local_pauli_index(p, qubits_.data(), k())];
}

PauliChannel amplify_channel(const PauliChannel& ch, double alpha) {
  if (!(alpha >= 0) || !std::isfinite(alpha)) throw std::invalid_argument("amplify_channel: alpha must be >= 0");
  std::vector<double> f = ch.eigenvalues();
  for (double& v : f) {
    if (v < 0) throw std::domain_error("amplify_channel: negative Pauli eigenvalue, channel power undefined");
    v = std::pow(v, alpha);
  }
  return PauliChannel::from_eigenvalues(ch.qubits(), f);
}

void NoiseModel::validate() const {
  if (!(p1 >= 0 && p1 <= 1) || !(p2 >= 0 && p2 <= 1)) throw std::invalid_argument("NoiseModel: p1, p2 must be in [0, 1]");
  if (!(alpha >= 0) || !std::isfinite(alpha)) throw std::invalid_argument("NoiseModel: alpha must be >= 0");
}

nlohmann::json noise_to_json(const NoiseModel& m) {
  return {{"p1", m.p1}, {"p2", m.p2}, {"alpha", m.alpha}};
}

NoiseModel noise_from_json(const nlohmann::json& j) {
  NoiseModel m;
  m.p1 = j.value("p1", m.p1);
  m.p2 = j.value("p2", m.p2);
  m.alpha = j.value("alpha", m.alpha);
  m.validate();
  return m;
}

bool NoisyCircuit::all_clifford() const {
  for (const auto& g : gates)
    if (!gate_is_clifford(g)) return false;
  return true;
}

NoisyCircuit attach_noise(const Circuit& c, const NoiseModel& model) {
  model.validate();
  NoisyCircuit nc;
  nc.n_qubits = c.n_qubits;
  nc.gates = c.gates;
  nc.channels.reserve(c.gates.size());
  for (const auto& g : c.gates) {
    std::vector<int> q(g.qubits.begin(), g.qubits.begin() + g.arity());
    PauliChannel ch = PauliChannel::depolarizing(q, g.arity() == 1 ? model.p1 : model.p2);
    nc.channels.push_back(model.alpha == 1.0 ? ch : amplify_channel(ch, model.alpha));
  }
  return nc;
}

NoisyCircuit amplify_circuit(const NoisyCircuit& nc, double alpha) {
  NoisyCircuit out = nc;
  if (alpha == 1.0) return out;
  for (auto& ch : out.channels) ch = amplify_channel(ch, alpha);
  return out;
}

}  // namespace nil
