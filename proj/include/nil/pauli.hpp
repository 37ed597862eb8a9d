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
#include <string_view>
#include <utility>
#include <vector>

namespace nil {

// Symplectic Pauli word: i^phase * prod_q P_q with (x,z) = (1,0) X, (1,1) Y,
// (0,1) Z. Y is the Hermitian Pauli, so a word with phase 0 is Hermitian.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n);

  // Accepts an optional sign prefix: "+", "-", "i", "-i", "+i".
  static PauliString from_string(std::string_view s);
  static PauliString single(int n, int q, char p);

  int n_qubits() const { return n_; }
  int num_words() const { return static_cast<int>(xs.size()); }

  bool x(int q) const { return (xs[q >> 6] >> (q & 63)) & 1; }
  bool z(int q) const { return (zs[q >> 6] >> (q & 63)) & 1; }
  void set(int q, bool xb, bool zb);
  char at(int q) const;  // 'I', 'X', 'Y' or 'Z'

  // Power of i in {0,1,2,3}.
  int phase() const { return phase_; }
  void set_phase(int p) { phase_ = ((p % 4) + 4) % 4; }
  void add_phase(int p) { set_phase(phase_ + p); }

  bool is_identity() const;
  bool is_z_type() const;  // no X or Y factors
  int weight() const;

  std::string str() const;  // sign prefix followed by letters

  bool operator==(const PauliString& o) const;
  bool operator!=(const PauliString& o) const { return !(*this == o); }

  std::vector<uint64_t> xs, zs;

 private:
  int n_ = 0;
  int phase_ = 0;
};

PauliString pauli_multiply(const PauliString& p, const PauliString& q);

// +1 if q and o commute, -1 otherwise.
int commutation_sign(const PauliString& q, const PauliString& o);

// True if on every qubit the two words agree or one of them is the identity.
bool qubitwise_compatible(const PauliString& a, const PauliString& b);

struct Term {
  double coeff = 0.0;
  PauliString pauli;
};

class Observable {
 public:
  Observable() = default;
  explicit Observable(int n) : n_(n) {}

  int n_qubits() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  // Rejects non-Hermitian words, non-finite coefficients and width mismatch.
  void add(double coeff, const PauliString& p);

  double l1_norm() const;

  static Observable parse(std::string_view text);
  std::string to_text() const;

 private:
  int n_ = 0;
  std::vector<Term> terms_;
};

// Greedy first-fit partition into qubit-wise compatible groups.
std::vector<std::vector<int>> group_commuting(const Observable& obs);

struct LatticeGraph {
  enum class Kind { Line, Grid };
  Kind kind = Kind::Line;
  int n1 = 0, n2 = 0;
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;

  static LatticeGraph line(int n);
  // Vertex (r, c) has index r * n2 + c. Horizontal edges are listed first.
  static LatticeGraph grid(int n1, int n2);
};

Observable build_tfi(const LatticeGraph& g, double J, double h);

}  // namespace nil
