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

#include <array>
#include <optional>
#include <vector>

#include "nil/circuit.hpp"
#include "nil/noise.hpp"

namespace nil {

constexpr int kDensityCap = 12;
constexpr int kStateVectorCap = 24;

class StateVector {
 public:
  explicit StateVector(int n);  // |0...0>
  int n_qubits() const { return n_; }
  void apply(const Gate& g);
  void apply_matrix(const Eigen::MatrixXcd& u, const int* qubits, int k);
  cd amplitude(uint64_t i) const { return amp_[i]; }
  double expectation(const PauliString& p) const;
  double expectation(const Observable& o) const;
  double norm() const;

 private:
  int n_;
  std::vector<cd> amp_;
};

// Row-major 2^n x 2^n matrix. Internally a 2n-qubit vector: bit q+n indexes
// the row qubit q, bit q the column qubit q.
class DensityMatrix {
 public:
  explicit DensityMatrix(int n);  // |0...0><0...0|
  static DensityMatrix from_observable(const Observable& o);

  int n_qubits() const { return n_; }
  uint64_t dim() const { return uint64_t{1} << n_; }
  cd& at(uint64_t r, uint64_t c) { return data_[(r << n_) | c]; }
  cd at(uint64_t r, uint64_t c) const { return data_[(r << n_) | c]; }

  // rho -> U rho U^dag
  void conjugate(const Eigen::MatrixXcd& u, const int* qubits, int k);
  void apply(const Gate& g);
  // Heisenberg step: O -> U^dag O U
  void apply_adjoint(const Gate& g);
  void apply_channel(const PauliChannel& ch);  // self-adjoint

  double expectation(const PauliString& p) const;  // Re Tr(P rho)
  double expectation(const Observable& o) const;
  cd trace() const;
  // Re Tr(O P rho P) for a single-qubit Pauli P ('X','Y','Z') on qubit q.
  double flipped_overlap(const DensityMatrix& obs, int q, char p) const;
  double hermiticity_error() const;
  Eigen::MatrixXcd to_matrix() const;

 private:
  int n_;
  std::vector<cd> data_;
};

double ideal_expectation(const Circuit& c, const Observable& o);
double noisy_expectation(const NoisyCircuit& nc, const Observable& o);
DensityMatrix simulate_density(const NoisyCircuit& nc);

// One exact noisy value per single-qubit Pauli insertion (after the gate at
// gate_index, before its channel), from one forward and one backward sweep.
struct DenseInsertion {
  int gate_index;
  int qubit;
  char pauli;
};
std::vector<double> dense_insertion_values(const NoisyCircuit& nc, const Observable& o,
                                           const std::vector<DenseInsertion>& ins);

// Frobenius distance between the finite-angle average of (R(t) (x) R(-t))^{(x)t}
// and its uniform-angle integral (64-point trapezoid rule).
double check_rotation_2design(const std::array<double, 3>& axis, int t,
                              const std::optional<std::vector<double>>& angles = std::nullopt);

}  // namespace nil
