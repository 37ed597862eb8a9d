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

#include "nil/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace nil {

namespace {

const char kPaulis[3] = {'X', 'Y', 'Z'};

void check_pauli(int op) {
  if (op != 'X' && op != 'Y' && op != 'Z') throw std::invalid_argument("NeighborSpec: Pauli must be X, Y or Z");
}

std::vector<Insertion> sorted_unique(std::vector<Insertion> ins) {
  if (ins.empty()) throw std::invalid_argument("NeighborSpec: insertion list must be non-empty");
  std::sort(ins.begin(), ins.end());
  for (std::size_t i = 1; i < ins.size(); ++i)
    if (ins[i].slot == ins[i - 1].slot) throw std::invalid_argument("NeighborSpec: repeated insertion slot");
  return ins;
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

NeighborSpec NeighborSpec::identity() { return NeighborSpec{}; }

NeighborSpec NeighborSpec::pauli(std::vector<Insertion> ins) {
  for (const auto& i : ins) check_pauli(i.op);
  NeighborSpec s;
  s.kind = Kind::PauliInsertion;
  s.insertions = sorted_unique(std::move(ins));
  return s;
}

NeighborSpec NeighborSpec::cptp(std::vector<Insertion> ins) {
  for (const auto& i : ins)
    if (i.op < 0 || i.op >= static_cast<int>(cptp_gate_set().size()))
      throw std::invalid_argument("NeighborSpec: CPTP gate index out of range");
  NeighborSpec s;
  s.kind = Kind::CPTPInsertion;
  s.insertions = sorted_unique(std::move(ins));
  return s;
}

NeighborSpec NeighborSpec::noise_scale(double alpha) {
  if (!(alpha >= 0) || !std::isfinite(alpha)) throw std::invalid_argument("NeighborSpec: alpha must be >= 0");
  NeighborSpec s;
  s.kind = Kind::NoiseScale;
  s.alpha = alpha;
  return s;
}

bool NeighborMap::has_noise_scale() const {
  for (const auto& s : specs)
    if (s.kind == NeighborSpec::Kind::NoiseScale) return true;
  return false;
}

int NeighborMap::identity_column() const {
  for (std::size_t j = 0; j < specs.size(); ++j) {
    const auto& s = specs[j];
    if (s.kind == NeighborSpec::Kind::Identity) return static_cast<int>(j);
    if (s.kind == NeighborSpec::Kind::NoiseScale && s.alpha == 1.0) return static_cast<int>(j);
  }
  return -1;
}

const std::vector<double>& default_zne_alphas() {
  static const std::vector<double> a = {1.0, 1.1, 1.34, 1.58};
  return a;
}

std::vector<InsertionSlot> enumerate_slots(const Circuit& c) {
  std::vector<InsertionSlot> out;
  for (int g = 0; g < static_cast<int>(c.gates.size()); ++g)
    for (int i = 0; i < c.gates[g].arity(); ++i) out.push_back({g, c.gates[g].qubits[i]});
  return out;
}

NeighborMap weight1_pauli_map(const Circuit& c) {
  NeighborMap m;
  m.kind = "pauli-w1";
  m.specs.push_back(NeighborSpec::identity());
  for (const auto& s : enumerate_slots(c))
    for (char p : kPaulis) m.specs.push_back(NeighborSpec::pauli({{s, p}}));
  m.params = {{"slots", enumerate_slots(c).size()}};
  return m;
}

NeighborMap random_subset_map(const NeighborMap& full, int s, Rng& rng) {
  std::vector<int> keep, rest;
  for (int j = 0; j < static_cast<int>(full.specs.size()); ++j)
    (full.specs[j].kind == NeighborSpec::Kind::Identity ? keep : rest).push_back(j);
  if (s < 0 || s > static_cast<int>(rest.size())) throw std::invalid_argument("random_subset_map: s out of range");
  // A full shuffle makes subsets under one seed nested in s.
  std::shuffle(rest.begin(), rest.end(), rng);
  keep.insert(keep.end(), rest.begin(), rest.begin() + s);
  std::sort(keep.begin(), keep.end());
  NeighborMap out = select_columns(full, keep);
  out.kind = "subset";
  out.params = {{"from", full.kind}, {"s", s}, {"full_size", full.size()}};
  return out;
}

NeighborMap weightk_pauli_map(const Circuit& c, int max_weight, int budget, Rng& rng) {
  if (max_weight < 1) throw std::invalid_argument("weightk_pauli_map: max weight must be >= 1");
  if (budget < 0) throw std::invalid_argument("weightk_pauli_map: negative budget");
  NeighborMap m = weight1_pauli_map(c);
  m.kind = "pauli-wk";
  m.params = {{"max_weight", max_weight}, {"budget", budget}};
  auto slots = enumerate_slots(c);
  const int S = static_cast<int>(slots.size());
  std::vector<double> counts;
  double total = 0;
  for (int w = 2; w <= max_weight; ++w) {
    counts.push_back(binom(S, w) * std::pow(3.0, w));
    total += counts.back();
  }
  if (budget > total) throw std::invalid_argument("weightk_pauli_map: budget exceeds the number of distinct specs");
  if (budget == 0) return m;
  std::discrete_distribution<int> pick_w(counts.begin(), counts.end());
  std::uniform_int_distribution<int> pick_p(0, 2);
  std::set<std::vector<Insertion>> seen;
  std::vector<int> idx(S);
  while (static_cast<int>(seen.size()) < budget) {
    int w = 2 + pick_w(rng);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < w; ++i) {
      std::uniform_int_distribution<int> d(i, S - 1);
      std::swap(idx[i], idx[d(rng)]);
    }
    std::vector<Insertion> ins;
    for (int i = 0; i < w; ++i) ins.push_back({slots[idx[i]], kPaulis[pick_p(rng)]});
    std::sort(ins.begin(), ins.end());
    if (seen.insert(ins).second) m.specs.push_back(NeighborSpec::pauli(ins));
  }
  return m;
}

const std::vector<CptpGate>& cptp_gate_set() {
  static const std::vector<CptpGate> set = [] {
    std::vector<CptpGate> out;
    for (const char* n : {"X", "Y", "Z", "KdgSdgK", "KSdgKdg", "Sdg", "KHKdg", "H", "KdgHK"})
      out.push_back({n, clifford1_index(n)});
    return out;
  }();
  return set;
}

NeighborMap cptp_map(const Circuit& c) {
  NeighborMap m;
  m.kind = "cptp";
  m.specs.push_back(NeighborSpec::identity());
  const int ng = static_cast<int>(cptp_gate_set().size());
  for (const auto& s : enumerate_slots(c))
    for (int op = 0; op < ng; ++op) m.specs.push_back(NeighborSpec::cptp({{s, op}}));
  return m;
}

NeighborMap zne_map(const std::vector<double>& alphas) {
  if (alphas.empty()) throw std::invalid_argument("zne_map: empty alpha list");
  NeighborMap m;
  m.kind = "zne";
  m.params = {{"alphas", alphas}};
  for (double a : alphas) m.specs.push_back(NeighborSpec::noise_scale(a));
  return m;
}

NeighborMap zne_plus_pauli_map(const Circuit& c, const std::vector<double>& alphas) {
  NeighborMap m = zne_map(alphas);
  m.kind = "zne+pauli";
  NeighborMap p = weight1_pauli_map(c);
  for (const auto& s : p.specs)
    if (s.kind != NeighborSpec::Kind::Identity) m.specs.push_back(s);
  return m;
}

NeighborMap select_columns(const NeighborMap& m, const std::vector<int>& cols) {
  NeighborMap out;
  out.kind = m.kind;
  out.params = m.params;
  for (int j : cols) out.specs.push_back(m.specs.at(j));
  return out;
}

NoisyCircuit apply(const NeighborSpec& spec, const NoisyCircuit& nc) {
  switch (spec.kind) {
    case NeighborSpec::Kind::Identity: return nc;
    case NeighborSpec::Kind::NoiseScale: return amplify_circuit(nc, spec.alpha);
    case NeighborSpec::Kind::PauliInsertion:
    case NeighborSpec::Kind::CPTPInsertion: break;
  }
  const int m = static_cast<int>(nc.gates.size());
  for (const auto& ins : spec.insertions) {
    if (ins.slot.gate < 0 || ins.slot.gate >= m) throw std::out_of_range("apply: slot gate out of range");
    const Gate& g = nc.gates[ins.slot.gate];
    bool ok = false;
    for (int i = 0; i < g.arity(); ++i) ok |= g.qubits[i] == ins.slot.qubit;
    if (!ok) throw std::invalid_argument("apply: slot qubit not in gate support");
  }
  NoisyCircuit out;
  out.n_qubits = nc.n_qubits;
  std::size_t next = 0;
  const auto& ins = spec.insertions;
  for (int g = 0; g < m; ++g) {
    std::size_t end = next;
    while (end < ins.size() && ins[end].slot.gate == g) ++end;
    if (end == next) {
      out.gates.push_back(nc.gates[g]);
      out.channels.push_back(nc.channels[g]);
      continue;
    }
    const Gate& base = nc.gates[g];
    out.gates.push_back(base);
    out.channels.push_back(PauliChannel::identity(nc.channels[g].qubits()));
    for (std::size_t i = next; i < end; ++i) {
      int idx = spec.kind == NeighborSpec::Kind::PauliInsertion
                    ? clifford1_index(std::string(1, static_cast<char>(ins[i].op)))
                    : cptp_gate_set()[ins[i].op].clifford;
      out.gates.push_back(Gate::clifford1(idx, ins[i].slot.qubit, base.layer));
      out.channels.push_back(i + 1 == end ? nc.channels[g]
                                          : PauliChannel::identity({ins[i].slot.qubit}));
    }
    next = end;
  }
  return out;
}

nlohmann::json neighbor_map_to_json(const NeighborMap& m) {
  using nlohmann::json;
  json specs = json::array();
  for (const auto& s : m.specs) {
    json js;
    switch (s.kind) {
      case NeighborSpec::Kind::Identity: js["type"] = "identity"; break;
      case NeighborSpec::Kind::NoiseScale:
        js["type"] = "scale";
        js["alpha"] = s.alpha;
        break;
      case NeighborSpec::Kind::PauliInsertion:
      case NeighborSpec::Kind::CPTPInsertion: {
        bool pauli = s.kind == NeighborSpec::Kind::PauliInsertion;
        js["type"] = pauli ? "pauli" : "cptp";
        json ins = json::array();
        for (const auto& i : s.insertions)
          ins.push_back({i.slot.gate, i.slot.qubit,
                         pauli ? std::string(1, static_cast<char>(i.op)) : cptp_gate_set()[i.op].name});
        js["ins"] = ins;
        break;
      }
    }
    specs.push_back(js);
  }
  return json{{"kind", m.kind}, {"params", m.params}, {"specs", specs}};
}

NeighborMap neighbor_map_from_json(const nlohmann::json& j) {
  NeighborMap m;
  m.kind = j.at("kind").get<std::string>();
  m.params = j.value("params", nlohmann::json::object());
  for (const auto& js : j.at("specs")) {
    std::string type = js.at("type").get<std::string>();
    if (type == "identity") {
      m.specs.push_back(NeighborSpec::identity());
    } else if (type == "scale") {
      m.specs.push_back(NeighborSpec::noise_scale(js.at("alpha").get<double>()));
    } else if (type == "pauli" || type == "cptp") {
      std::vector<Insertion> ins;
      for (const auto& ji : js.at("ins")) {
        std::string op = ji.at(2).get<std::string>();
        Insertion in{{ji.at(0).get<int>(), ji.at(1).get<int>()}, 0};
        if (type == "pauli") {
          if (op.size() != 1) throw std::invalid_argument("neighbor_map_from_json: bad Pauli " + op);
          in.op = op[0];
        } else {
          const auto& set = cptp_gate_set();
          auto it = std::find_if(set.begin(), set.end(), [&](const CptpGate& g) { return g.name == op; });
          if (it == set.end()) throw std::invalid_argument("neighbor_map_from_json: unknown CPTP gate " + op);
          in.op = static_cast<int>(it - set.begin());
        }
        ins.push_back(in);
      }
      m.specs.push_back(type == "pauli" ? NeighborSpec::pauli(ins) : NeighborSpec::cptp(ins));
    } else {
      throw std::invalid_argument("neighbor_map_from_json: unknown spec type " + type);
    }
  }
  return m;
}

}  // namespace nil
