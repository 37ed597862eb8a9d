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
#include <vector>

#include "nil/circuit.hpp"
#include "nil/noise.hpp"

namespace nil {

// Stabilizer tableau of C|0...0>. Before any measurement the rows are the
// images C X_i C^dag (destabilizers) and C Z_i C^dag (stabilizers), so the
// tableau also represents the Clifford unitary itself.
class CliffordTableau {
 public:
  explicit CliffordTableau(int n);

  int n_qubits() const { return n_; }
  void apply(const Gate& g);
  void apply(const std::vector<Gate>& gates);

  const PauliString& destabilizer(int i) const { return rows_[i]; }
  const PauliString& stabilizer(int i) const { return rows_[n_ + i]; }

  // U p U^dag for the accumulated unitary (valid before measurements).
  PauliString image(const PauliString& p) const;

  // Measures a Hermitian Pauli product and collapses the state. Returns the
  // outcome bit (0 for +1); random outcomes resolve to `forced`.
  int measure(const PauliString& p, int forced = 0, bool* was_random = nullptr);

  // Expectation of a Hermitian Pauli on the current state: -1, 0 or +1.
  int expectation(const PauliString& p) const;

  bool is_symplectic() const;

 private:
  int n_;
  std::vector<PauliString> rows_;
};

// Per-term ideal values in {-1, 0, +1} by Heisenberg back-propagation.
std::vector<int> clifford_term_values(const std::vector<Gate>& gates, const Observable& o);
double clifford_ideal_expectation(const Circuit& c, const Observable& o);

// Exact noisy expectation of a Clifford circuit under Pauli channels, by
// back-propagating each term and collecting channel eigenvalues.
double pauli_path_expectation(const NoisyCircuit& nc, const Observable& o);

// Back-propagation record used for Pauli-insertion neighbors: base[k] is the
// exact noisy value of term k; code[k][g] is the local Pauli index of the
// propagated term on gate g's qubits, taken right after gate g.
struct PauliPathRecord {
  std::vector<double> base;
  std::vector<std::vector<uint8_t>> code;
};
PauliPathRecord pauli_path_record(const NoisyCircuit& nc, const Observable& o);

// Exact noisy value of the circuit with single-qubit Pauli p inserted on
// `qubit` right after gate g (see neighbors.hpp for placement).
double pauli_path_insertion(const PauliPathRecord& rec, const NoisyCircuit& nc, const Observable& o, int g,
                            int qubit, char p);

struct ShotPlan {
  int64_t total_shots = 0;
  std::vector<int64_t> per_group;
  uint64_t seed = 0;

  // Equal split; the remainder goes to the first groups.
  static ShotPlan equal_split(int64_t total, int n_groups, uint64_t seed);
};

struct Estimate {
  double value = 0.0;
  double variance = 0.0;  // variance of the estimator; 0 when not requested
};

// Bit-packed Pauli frames, 64 shots per word, qubit-major.
class FrameSimulator {
 public:
  FrameSimulator(int n, int64_t shots);
  int64_t shots() const { return shots_; }
  // Randomized Z frames, then gates and sampled channel errors.
  void run(const NoisyCircuit& nc, Rng& rng);
  // Packed per-shot parity of anticommutation between the frame and p.
  void flips(const PauliString& p, std::vector<uint64_t>& out) const;
  int64_t count(const std::vector<uint64_t>& bits) const;

 private:
  void apply_gate(const Gate& g);
  void apply_noise(const PauliChannel& ch, Rng& rng);

  int n_;
  int64_t shots_;
  int words_;
  uint64_t last_mask_;
  std::vector<uint64_t> x_, z_;
};

// One noiseless joint outcome (+1/-1 per term) for each commuting group,
// obtained by measuring the group's terms in sequence on a fresh tableau.
std::vector<int> reference_outcomes(const std::vector<Gate>& gates, int n, const Observable& o,
                                    const std::vector<std::vector<int>>& groups);

// Shot-sampled estimate of a Clifford circuit under Pauli noise. `ref` is the
// output of reference_outcomes for the same gates, possibly with per-term
// sign flips (Pauli-insertion neighbors). `rng_seed` seeds the group streams.
Estimate frame_estimate(const NoisyCircuit& nc, const Observable& o, const std::vector<std::vector<int>>& groups,
                        const std::vector<int>& ref, const ShotPlan& plan, uint64_t rng_seed, bool want_variance);

Estimate sample_noisy_estimate(const NoisyCircuit& nc, const Observable& o, const ShotPlan& plan,
                               bool want_variance = true);

}  // namespace nil
