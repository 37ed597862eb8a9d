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

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nil/circuit.hpp"
#include "nil/noise.hpp"

namespace nil {

struct InsertionSlot {
  int gate = 0;
  int qubit = 0;
  bool operator==(const InsertionSlot&) const = default;
  auto operator<=>(const InsertionSlot&) const = default;
};

// op is 'X', 'Y' or 'Z' for Pauli insertions, or an index into cptp_gate_set()
// for CPTP insertions.
struct Insertion {
  InsertionSlot slot;
  int op = 0;
  bool operator==(const Insertion&) const = default;
  auto operator<=>(const Insertion&) const = default;
};

struct NeighborSpec {
  enum class Kind { Identity, PauliInsertion, CPTPInsertion, NoiseScale };
  Kind kind = Kind::Identity;
  std::vector<Insertion> insertions;  // sorted by slot
  double alpha = 1.0;

  int weight() const { return static_cast<int>(insertions.size()); }
  bool operator==(const NeighborSpec&) const = default;

  static NeighborSpec identity();
  static NeighborSpec pauli(std::vector<Insertion> ins);
  static NeighborSpec cptp(std::vector<Insertion> ins);
  static NeighborSpec noise_scale(double alpha);
};

struct NeighborMap {
  std::string kind;  // pauli-w1, pauli-wk, cptp, zne, zne+pauli, subset
  nlohmann::json params = nlohmann::json::object();
  std::vector<NeighborSpec> specs;

  std::size_t size() const { return specs.size(); }
  bool has_noise_scale() const;
  // Column holding the unmodified noisy circuit (Identity or alpha = 1), or -1.
  int identity_column() const;
};

std::vector<InsertionSlot> enumerate_slots(const Circuit& c);

NeighborMap weight1_pauli_map(const Circuit& c);
NeighborMap random_subset_map(const NeighborMap& full, int s, Rng& rng);
NeighborMap weightk_pauli_map(const Circuit& c, int max_weight, int budget, Rng& rng);
NeighborMap cptp_map(const Circuit& c);
NeighborMap zne_map(const std::vector<double>& alphas);
NeighborMap zne_plus_pauli_map(const Circuit& c, const std::vector<double>& alphas);

// Restrict to the given columns, in the given order.
NeighborMap select_columns(const NeighborMap& m, const std::vector<int>& cols);

struct CptpGate {
  std::string name;
  int clifford;  // index into clifford1_group()
};
const std::vector<CptpGate>& cptp_gate_set();

// Splices insertions after their slot gates: the slot gate keeps an identity
// channel and the last gate spliced after it carries the original channel, so
// the noisy block reads E o P o U. Inserted gates add no noise of their own.
NoisyCircuit apply(const NeighborSpec& spec, const NoisyCircuit& nc);

nlohmann::json neighbor_map_to_json(const NeighborMap& m);
NeighborMap neighbor_map_from_json(const nlohmann::json& j);

const std::vector<double>& default_zne_alphas();

}  // namespace nil
