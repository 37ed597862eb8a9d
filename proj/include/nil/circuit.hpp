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

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nil/gates.hpp"
#include "nil/pauli.hpp"
#include "nil/rng.hpp"

namespace nil {

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  void add(const Gate& g);  // validates qubit range and layer order
  int num_layers() const;
  int num_params() const;
};

struct AnsatzSpec {
  enum class Family { Vqe, VqeRy, Hva };
  Family family = Family::Vqe;
  int n = 0, m = 0;    // vqe / vqeRy
  int n1 = 0, n2 = 0;  // hva grid
  uint64_t axis_seed = 0;

  static AnsatzSpec vqe(int n, int m, uint64_t axis_seed = 0);
  static AnsatzSpec vqe_ry(int n, int m);
  static AnsatzSpec hva(int n1, int n2, int m);

  int n_qubits() const;
  std::string label() const;
  LatticeGraph graph() const;  // line for vqe families, grid for hva
};

// Layer indices are 1-based; parametric rotations start at angle 0.
Circuit build_ansatz(const AnsatzSpec& spec);

Circuit bind_uniform(const Circuit& c, Rng& rng);
Circuit gen_training_2design(const Circuit& c, Rng& rng);
Circuit gen_training_all_clifford(const Circuit& c, Rng& rng);
Circuit gen_training_mixed(const Circuit& c, int L, Rng& rng);
Circuit haar_single_qubit_test_circuit(const Circuit& c, Rng& rng);
Mat2 haar_unitary(Rng& rng);

bool is_clifford(const Circuit& c);

nlohmann::json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

nlohmann::json ansatz_to_json(const AnsatzSpec& s);
AnsatzSpec ansatz_from_json(const nlohmann::json& j);

}  // namespace nil
