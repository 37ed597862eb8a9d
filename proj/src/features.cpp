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

#include "nil/features.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

namespace nil {

namespace {

using Kind = NeighborSpec::Kind;

bool single_pauli(const NeighborSpec& s) { return s.kind == Kind::PauliInsertion && s.weight() == 1; }

int pauli_code(int op) { return op == 'X' ? 1 : op == 'Z' ? 2 : 3; }

// Sign flip of term k from the inserted Paulis, using the commutation of each
// inserted Pauli with the term back-propagated to the insertion point.
int insertion_sign(const PauliPathRecord& rec, const NoisyCircuit& nc, const NeighborSpec& spec, int k) {
  int par = 0;
  for (const auto& ins : spec.insertions) {
    const Gate& g = nc.gates[ins.slot.gate];
    int leg = g.qubits[0] == ins.slot.qubit ? 0 : 1;
    int qc = (rec.code[k][ins.slot.gate] >> (2 * leg)) & 3;
    par ^= local_symplectic(qc, pauli_code(ins.op));
  }
  return par ? -1 : 1;
}

double dense_bytes(int n) { return 16.0 * std::ldexp(1.0, 2 * n); }

void exact_clifford(const NoisyCircuit& nc, const NeighborMap& map, const Observable& obs, FeatureRow& row) {
  PauliPathRecord rec = pauli_path_record(nc, obs);
  double base = 0;
  for (std::size_t k = 0; k < rec.base.size(); ++k) base += obs.terms()[k].coeff * rec.base[k];
  for (std::size_t j = 0; j < map.specs.size(); ++j) {
    const auto& s = map.specs[j];
    if (s.kind == Kind::Identity) {
      row.x[j] = base;
    } else if (s.kind == Kind::PauliInsertion) {
      double v = 0;
      for (std::size_t k = 0; k < rec.base.size(); ++k)
        if (rec.base[k] != 0) v += insertion_sign(rec, nc, s, static_cast<int>(k)) * obs.terms()[k].coeff * rec.base[k];
      row.x[j] = v;
    } else {
      row.x[j] = pauli_path_expectation(apply(s, nc), obs);
    }
  }
}

void exact_dense(const NoisyCircuit& nc, const NeighborMap& map, const Observable& obs, FeatureRow& row) {
  std::vector<DenseInsertion> ins;
  std::vector<int> cols;
  std::set<int> gates_used;
  for (std::size_t j = 0; j < map.specs.size(); ++j) {
    const auto& s = map.specs[j];
    if (!single_pauli(s)) continue;
    const auto& in = s.insertions[0];
    ins.push_back({in.slot.gate, in.slot.qubit, static_cast<char>(in.op)});
    cols.push_back(static_cast<int>(j));
    gates_used.insert(in.slot.gate);
  }
  // Keep the forward-state cache under ~1.5 GB; otherwise simulate one by one.
  bool fast = !ins.empty() && dense_bytes(nc.n_qubits) * (gates_used.size() + 2) < 1.5e9;
  if (fast) {
    auto vals = dense_insertion_values(nc, obs, ins);
    for (std::size_t i = 0; i < cols.size(); ++i) row.x[cols[i]] = vals[i];
  }
  double base = std::nan("");
  for (std::size_t j = 0; j < map.specs.size(); ++j) {
    const auto& s = map.specs[j];
    if (fast && single_pauli(s)) continue;
    if (s.kind == Kind::Identity) {
      if (std::isnan(base)) base = noisy_expectation(nc, obs);
      row.x[j] = base;
    } else {
      row.x[j] = noisy_expectation(apply(s, nc), obs);
    }
  }
}

void sampled_clifford(const NoisyCircuit& nc, const NeighborMap& map, const Observable& obs, const FeatureMode& mode,
                      uint64_t seed, FeatureRow& row) {
  auto groups = group_commuting(obs);
  ShotPlan plan = ShotPlan::equal_split(mode.shots, static_cast<int>(groups.size()), seed);
  std::vector<int> ref = reference_outcomes(nc.gates, nc.n_qubits, obs, groups);
  bool need_rec = false;
  for (const auto& s : map.specs) need_rec |= s.kind == Kind::PauliInsertion;
  PauliPathRecord rec;
  if (need_rec) rec = pauli_path_record(nc, obs);
  std::vector<int> flipped(ref.size());
  for (std::size_t j = 0; j < map.specs.size(); ++j) {
    const auto& s = map.specs[j];
    uint64_t sj = derive_seed(seed, {j});
    Estimate e;
    switch (s.kind) {
      case Kind::Identity: e = frame_estimate(nc, obs, groups, ref, plan, sj, mode.want_variance); break;
      case Kind::NoiseScale:
        e = frame_estimate(amplify_circuit(nc, s.alpha), obs, groups, ref, plan, sj, mode.want_variance);
        break;
      case Kind::PauliInsertion:
        // Same gates up to Paulis: reuse the reference with per-term flips.
        for (std::size_t k = 0; k < ref.size(); ++k) flipped[k] = ref[k] * insertion_sign(rec, nc, s, static_cast<int>(k));
        e = frame_estimate(nc, obs, groups, flipped, plan, sj, mode.want_variance);
        break;
      case Kind::CPTPInsertion: {
        NoisyCircuit a = apply(s, nc);
        auto r2 = reference_outcomes(a.gates, a.n_qubits, obs, groups);
        e = frame_estimate(a, obs, groups, r2, plan, sj, mode.want_variance);
        break;
      }
    }
    row.x[j] = e.value;
    row.var[j] = e.variance;
  }
}

void sampled_dense(const NoisyCircuit& nc, const NeighborMap& map, const Observable& obs, const FeatureMode& mode,
                   uint64_t seed, FeatureRow& row) {
  auto groups = group_commuting(obs);
  ShotPlan plan = ShotPlan::equal_split(mode.shots, static_cast<int>(groups.size()), seed);
  for (std::size_t j = 0; j < map.specs.size(); ++j) {
    DensityMatrix rho = simulate_density(apply(map.specs[j], nc));
    Estimate e = sample_from_density(rho, obs, groups, plan, derive_seed(seed, {j}), mode.want_variance);
    row.x[j] = e.value;
    row.var[j] = e.variance;
  }
}

}  // namespace

FeatureRow estimate_features(const Circuit& base, const NeighborMap& map, const NoiseModel& model,
                             const Observable& obs, const FeatureMode& mode, uint64_t seed) {
  if (obs.n_qubits() != base.n_qubits) throw std::invalid_argument("estimate_features: observable width mismatch");
  if (!mode.exact && mode.shots < 1) throw std::invalid_argument("estimate_features: sampled mode needs shots >= 1");
  NoisyCircuit nc = attach_noise(base, model);
  FeatureRow row;
  row.x.assign(map.size(), 0.0);
  row.var.assign(map.size(), 0.0);
  bool clifford = is_clifford(base);
  if (!clifford && base.n_qubits > kDensityCap)
    throw std::length_error("estimate_features: non-Clifford circuit exceeds the density-matrix cap (" +
                            std::to_string(kDensityCap) + " qubits)");
  if (mode.exact) {
    if (clifford) exact_clifford(nc, map, obs, row);
    else exact_dense(nc, map, obs, row);
  } else {
    if (clifford) sampled_clifford(nc, map, obs, mode, seed, row);
    else sampled_dense(nc, map, obs, mode, seed, row);
  }
  return row;
}

double ideal_label(const Circuit& c, const Observable& obs) {
  return is_clifford(c) ? clifford_ideal_expectation(c, obs) : ideal_expectation(c, obs);
}

Estimate sample_from_density(const DensityMatrix& rho, const Observable& obs,
                             const std::vector<std::vector<int>>& groups, const ShotPlan& plan, uint64_t seed,
                             bool want_variance) {
  if (plan.per_group.size() != groups.size()) throw std::invalid_argument("sample_from_density: plan/group mismatch");
  const int n = rho.n_qubits();
  const uint64_t dim = rho.dim();
  Mat2 h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Mat2 sdg = Mat2::Identity();
  sdg(1, 1) = cd(0, -1);
  const Mat2 to_z[3] = {h, h * sdg, Mat2::Identity()};  // X, Y, Z bases
  Estimate est;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& grp = groups[gi];
    DensityMatrix r = rho;
    for (int q = 0; q < n; ++q) {
      int basis = -1;
      for (int k : grp) {
        const auto& p = obs.terms()[k].pauli;
        if (p.x(q) && p.z(q)) basis = 1;
        else if (p.x(q)) basis = 0;
        else if (p.z(q)) basis = 2;
        if (basis >= 0) break;
      }
      if (basis == 0 || basis == 1) r.conjugate(to_z[basis], &q, 1);
    }
    std::vector<double> probs(dim);
    std::vector<double> value(dim, 0.0);
    for (uint64_t b = 0; b < dim; ++b) probs[b] = std::max(0.0, r.at(b, b).real());
    for (int k : grp) {
      const auto& p = obs.terms()[k].pauli;
      uint64_t supp = (p.xs.empty() ? 0 : (p.xs[0] | p.zs[0]));
      double c = obs.terms()[k].coeff;
      for (uint64_t b = 0; b < dim; ++b) value[b] += (std::popcount(b & supp) & 1) ? -c : c;
    }
    Rng rng = make_rng(seed, {gi});
    std::discrete_distribution<uint64_t> pick(probs.begin(), probs.end());
    const int64_t s = plan.per_group[gi];
    double sum = 0, sum2 = 0;
    for (int64_t t = 0; t < s; ++t) {
      double v = value[pick(rng)];
      sum += v;
      sum2 += v * v;
    }
    double mean = sum / static_cast<double>(s);
    est.value += mean;
    if (want_variance && s > 1) {
      double var = (sum2 - s * mean * mean) / static_cast<double>(s - 1);
      est.variance += std::max(0.0, var) / static_cast<double>(s);
    }
  }
  return est;
}

}  // namespace nil
