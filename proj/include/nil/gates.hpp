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
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nil/pauli.hpp"

namespace nil {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

enum class GateKind { Rotation, ZZRotation, Clifford1, Clifford2, Unitary1 };
enum class TwoQubitClifford { CZ, CNOT };

// Rotations follow R_P(t) = exp(-i t P / 2). Two-qubit gates store their pair
// in qubits[0], qubits[1]; for CNOT qubits[0] is the control.
struct Gate {
  GateKind kind = GateKind::Rotation;
  std::array<int, 2> qubits{-1, -1};
  char axis = 'Z';
  double angle = 0.0;
  int clifford = 0;
  TwoQubitClifford two = TwoQubitClifford::CZ;
  Mat2 unitary = Mat2::Identity();
  bool param = false;
  int layer = 0;

  int arity() const { return qubits[1] < 0 ? 1 : 2; }
  bool is_rotation() const { return kind == GateKind::Rotation || kind == GateKind::ZZRotation; }

  static Gate rotation(char axis, int q, double angle, bool param = true, int layer = 0);
  static Gate zz(int a, int b, double angle, bool param = true, int layer = 0);
  static Gate clifford1(int index, int q, int layer = 0);
  static Gate cz(int a, int b, int layer = 0);
  static Gate cnot(int control, int target, int layer = 0);
  static Gate haar(const Mat2& u, int q, int layer = 0);
};

Mat2 rotation_matrix(char axis, double theta);
Mat4 zz_matrix(double theta);
Mat2 pauli_matrix(char p);

// Local ordering: bit 0 of the matrix index is qubits[0].
Eigen::MatrixXcd gate_unitary(const Gate& g);

// The 24 single-qubit Cliffords modulo global phase, index 0 = identity.
const std::vector<Mat2>& clifford1_group();
int clifford1_find(const Mat2& u);  // -1 if not a Clifford
int clifford1_index(const std::string& name);  // throws on unknown name
std::string clifford1_name(int index);

// Angle multiple of pi/2 within 1e-12; returns k mod 4 or -1.
int quarter_turns(double angle);

bool gate_is_clifford(const Gate& g);

// Signed Pauli permutation of a 1- or 2-qubit Clifford. Local Pauli index: for
// local qubit i, bit 2i is x and bit 2i+1 is z.
struct PauliTable {
  int k = 1;
  std::vector<uint8_t> img;
  std::vector<int8_t> sign;
};

struct CliffordAction {
  PauliTable fwd;  // P -> U P U^dag
  PauliTable inv;  // P -> U^dag P U
  // GF(2) images (sign-free) of the local generators X_0, Z_0, X_1, Z_1 under
  // forward conjugation, each as a local Pauli index.
  std::array<uint8_t, 4> gen{};
};

// nullptr for non-Clifford gates.
const CliffordAction* clifford_action(const Gate& g);

CliffordAction make_clifford_action(const Eigen::MatrixXcd& u);

Eigen::MatrixXcd local_pauli_matrix(int index, int k);

// Local index of p restricted to the given qubits.
int local_pauli_index(const PauliString& p, const int* qubits, int k);

// In-place conjugation of p by the gate (forward: U p U^dag, else U^dag p U).
void conjugate_by(PauliString& p, const Gate& g, bool forward);
void conjugate_by(PauliString& p, const CliffordAction& a, const int* qubits, int k, bool forward);

}  // namespace nil
