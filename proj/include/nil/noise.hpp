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

#include <vector>

#include <json.hpp>

#include "nil/circuit.hpp"

namespace nil {

// Pauli channel on 1 or 2 qubits. probs is indexed by local Pauli index (see
// PauliTable) and includes the identity at index 0.
class PauliChannel {
 public:
  PauliChannel() = default;
  PauliChannel(std::vector<int> qubits, std::vector<double> probs);

  static PauliChannel identity(std::vector<int> qubits);
  static PauliChannel depolarizing(std::vector<int> qubits, double p);
  static PauliChannel from_eigenvalues(std::vector<int> qubits, const std::vector<double>& f);

  const std::vector<int>& qubits() const { return qubits_; }
  int k() const { return static_cast<int>(qubits_.size()); }
  const std::vector<double>& probs() const { return probs_; }
  // f_b = sum_a p_a mu(a, b): the factor applied to Pauli b.
  const std::vector<double>& eigenvalues() const { return eig_; }
  double error_prob() const { return 1.0 - probs_[0]; }
  bool is_identity() const { return error_prob() <= 0.0; }

  // Eigenvalue for the restriction of a global Pauli to this support.
  double eigenvalue_for(const PauliString& p) const;

 private:
  std::vector<int> qubits_;
  std::vector<double> probs_;
  std::vector<double> eig_;
};

// Parity of the symplectic product of two local Pauli indices.
int local_symplectic(int a, int b);

PauliChannel amplify_channel(const PauliChannel& ch, double alpha);

struct NoiseModel {
  double p1 = 0.001;
  double p2 = 0.01;
  double alpha = 1.0;

  void validate() const;
  bool noiseless() const { return p1 == 0 && p2 == 0; }
};

nlohmann::json noise_to_json(const NoiseModel& m);
NoiseModel noise_from_json(const nlohmann::json& j);

// One channel per gate, applied right after it. A channel normally covers its
// gate's support; spliced-in gates may carry the channel of the gate they
// follow (see apply() in neighbors.hpp).
struct NoisyCircuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  std::vector<PauliChannel> channels;

  bool all_clifford() const;
};

NoisyCircuit attach_noise(const Circuit& c, const NoiseModel& model);
NoisyCircuit amplify_circuit(const NoisyCircuit& nc, double alpha);

}  // namespace nil
