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

#include "nil/stabilizer.hpp"

#include <bit>
#include <stdexcept>

namespace nil {

CliffordTableau::CliffordTableau(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("CliffordTableau: n must be >= 1");
  rows_.reserve(2 * n);
  for (int i = 0; i < n; ++i) rows_.push_back(PauliString::single(n, i, 'X'));
  for (int i = 0; i < n; ++i) rows_.push_back(PauliString::single(n, i, 'Z'));
}

void CliffordTableau::apply(const Gate& g) {
  const CliffordAction* a = clifford_action(g);
  if (!a) throw std::invalid_argument("CliffordTableau: non-Clifford gate");
  for (int i = 0; i < g.arity(); ++i)
    if (g.qubits[i] >= n_) throw std::out_of_range("CliffordTableau: qubit out of range");
  for (auto& r : rows_) conjugate_by(r, *a, g.qubits.data(), g.arity(), true);
}

void CliffordTableau::apply(const std::vector<Gate>& gates) {
  for (const auto& g : gates) apply(g);
}

PauliString CliffordTableau::image(const PauliString& p) const {
  if (p.n_qubits() != n_) throw std::invalid_argument("CliffordTableau::image: width mismatch");
  // Hermitian Y = i X Z, so P = i^(phase + #Y) prod_q X_q^x Z_q^z.
  PauliString out(n_);
  int ny = 0;
  for (int w = 0; w < p.num_words(); ++w) ny += std::popcount(p.xs[w] & p.zs[w]);
  out.set_phase(p.phase() + ny);
  for (int q = 0; q < n_; ++q) {
    if (p.x(q)) out = pauli_multiply(out, rows_[q]);
    if (p.z(q)) out = pauli_multiply(out, rows_[n_ + q]);
  }
  return out;
}

int CliffordTableau::expectation(const PauliString& p) const {
  for (int i = 0; i < n_; ++i)
    if (commutation_sign(rows_[n_ + i], p) < 0) return 0;
  PauliString prod(n_);
  for (int i = 0; i < n_; ++i)
    if (commutation_sign(rows_[i], p) < 0) prod = pauli_multiply(prod, rows_[n_ + i]);
  return ((prod.phase() - p.phase()) & 3) == 0 ? 1 : -1;
}

int CliffordTableau::measure(const PauliString& p, int forced, bool* was_random) {
  if (p.n_qubits() != n_) throw std::invalid_argument("CliffordTableau::measure: width mismatch");
  if (p.phase() & 1) throw std::invalid_argument("CliffordTableau::measure: non-Hermitian Pauli");
  int pivot = -1;
  for (int i = 0; i < n_; ++i)
    if (commutation_sign(rows_[n_ + i], p) < 0) {
      pivot = n_ + i;
      break;
    }
  if (was_random) *was_random = pivot >= 0;
  if (pivot < 0) return expectation(p) > 0 ? 0 : 1;
  for (int i = 0; i < 2 * n_; ++i)
    if (i != pivot && commutation_sign(rows_[i], p) < 0) rows_[i] = pauli_multiply(rows_[i], rows_[pivot]);
  rows_[pivot - n_] = rows_[pivot];
  rows_[pivot] = p;
  if (forced) rows_[pivot].add_phase(2);
  return forced ? 1 : 0;
}

bool CliffordTableau::is_symplectic() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      int want = i == j ? -1 : 1;
      if (commutation_sign(rows_[i], rows_[n_ + j]) != want) return false;
      if (commutation_sign(rows_[i], rows_[j]) != 1) return false;
      if (commutation_sign(rows_[n_ + i], rows_[n_ + j]) != 1) return false;
    }
  return true;
}

std::vector<int> clifford_term_values(const std::vector<Gate>& gates, const Observable& o) {
  std::vector<const CliffordAction*> acts;
  acts.reserve(gates.size());
  for (const auto& g : gates) {
    const CliffordAction* a = clifford_action(g);
    if (!a) throw std::invalid_argument("clifford_ideal_expectation: circuit is not Clifford");
    acts.push_back(a);
  }
  std::vector<int> vals;
  for (const auto& t : o.terms()) {
    PauliString q = t.pauli;
    for (int g = static_cast<int>(gates.size()) - 1; g >= 0; --g)
      conjugate_by(q, *acts[g], gates[g].qubits.data(), gates[g].arity(), false);
    vals.push_back(q.is_z_type() ? (q.phase() == 0 ? 1 : -1) : 0);
  }
  return vals;
}

double clifford_ideal_expectation(const Circuit& c, const Observable& o) {
  if (o.n_qubits() != c.n_qubits) throw std::invalid_argument("clifford_ideal_expectation: width mismatch");
  auto vals = clifford_term_values(c.gates, o);
  double s = 0;
  for (std::size_t k = 0; k < vals.size(); ++k) s += o.terms()[k].coeff * vals[k];
  return s;
}

PauliPathRecord pauli_path_record(const NoisyCircuit& nc, const Observable& o) {
  if (o.n_qubits() != nc.n_qubits) throw std::invalid_argument("pauli_path: width mismatch");
  const int m = static_cast<int>(nc.gates.size());
  std::vector<const CliffordAction*> acts(m);
  for (int g = 0; g < m; ++g) {
    acts[g] = clifford_action(nc.gates[g]);
    if (!acts[g]) throw std::invalid_argument("pauli_path: circuit is not Clifford");
  }
  PauliPathRecord rec;
  for (const auto& t : o.terms()) {
    PauliString q = t.pauli;
    double lambda = 1.0;
    std::vector<uint8_t> codes(m);
    for (int g = m - 1; g >= 0; --g) {
      const Gate& gate = nc.gates[g];
      lambda *= nc.channels[g].eigenvalue_for(q);
      codes[g] = static_cast<uint8_t>(local_pauli_index(q, gate.qubits.data(), gate.arity()));
      conjugate_by(q, *acts[g], gate.qubits.data(), gate.arity(), false);
    }
    rec.base.push_back(q.is_z_type() ? (q.phase() == 0 ? lambda : -lambda) : 0.0);
    rec.code.push_back(std::move(codes));
  }
  return rec;
}

double pauli_path_expectation(const NoisyCircuit& nc, const Observable& o) {
  auto rec = pauli_path_record(nc, o);
  double s = 0;
  for (std::size_t k = 0; k < rec.base.size(); ++k) s += o.terms()[k].coeff * rec.base[k];
  return s;
}

double pauli_path_insertion(const PauliPathRecord& rec, const NoisyCircuit& nc, const Observable& o, int g,
                            int qubit, char p) {
  const Gate& gate = nc.gates.at(g);
  int leg = -1;
  for (int i = 0; i < gate.arity(); ++i)
    if (gate.qubits[i] == qubit) leg = i;
  if (leg < 0) throw std::invalid_argument("pauli_path_insertion: qubit not in gate support");
  int pc = p == 'X' ? 1 : p == 'Z' ? 2 : p == 'Y' ? 3 : -1;
  if (pc < 0) throw std::invalid_argument("pauli_path_insertion: bad Pauli");
  double s = 0;
  for (std::size_t k = 0; k < rec.base.size(); ++k) {
    if (rec.base[k] == 0) continue;
    int qc = (rec.code[k][g] >> (2 * leg)) & 3;
    double v = o.terms()[k].coeff * rec.base[k];
    s += local_symplectic(qc, pc) ? -v : v;
  }
  return s;
}

ShotPlan ShotPlan::equal_split(int64_t total, int n_groups, uint64_t seed) {
  if (n_groups < 1) throw std::invalid_argument("ShotPlan: need at least one group");
  if (total < n_groups) throw std::invalid_argument("ShotPlan: fewer shots than groups");
  ShotPlan p;
  p.total_shots = total;
  p.seed = seed;
  for (int g = 0; g < n_groups; ++g) p.per_group.push_back(total / n_groups + (g < total % n_groups ? 1 : 0));
  return p;
}

}  // namespace nil
