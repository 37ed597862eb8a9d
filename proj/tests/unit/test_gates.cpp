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

#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <set>

#include "oracle.hpp"

namespace {

using nil::Gate;

double phase_distance(const nil::Mat2& a, const nil::Mat2& b) {
  nil::cd ip = (a.adjoint() * b).trace() / 2.0;
  return 1.0 - std::abs(ip);
}

TEST(Clifford1, GroupHas24PhaseDistinctElements) {
  const auto& g = nil::clifford1_group();
  ASSERT_EQ(g.size(), 24u);
  EXPECT_LT(phase_distance(g[0], nil::Mat2::Identity()), 1e-12);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_LT((g[i].adjoint() * g[i] - nil::Mat2::Identity()).norm(), 1e-12);
    for (std::size_t j = 0; j < i; ++j) EXPECT_GT(phase_distance(g[i], g[j]), 1e-6);
    // Closure: conjugation maps each Pauli to a signed Pauli.
    for (char p : {'X', 'Y', 'Z'}) {
      nil::Mat2 img = g[i] * nil::pauli_matrix(p) * g[i].adjoint();
      int hits = 0;
      for (char q : {'X', 'Y', 'Z'})
        hits += (img - nil::pauli_matrix(q)).norm() < 1e-12 || (img + nil::pauli_matrix(q)).norm() < 1e-12;
      EXPECT_EQ(hits, 1);
    }
  }
}

TEST(Clifford1, NamesResolve) {
  for (const char* name : {"I", "X", "Y", "Z", "H", "S", "Sdg"}) {
    int k = nil::clifford1_index(name);
    EXPECT_EQ(nil::clifford1_name(k), name);
  }
  nil::Mat2 h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  EXPECT_LT(phase_distance(nil::clifford1_group()[nil::clifford1_index("H")], h), 1e-12);
  // K = S H, products read as matrix products left to right.
  nil::Mat2 s = nil::Mat2::Identity();
  s(1, 1) = nil::cd(0, 1);
  EXPECT_LT(phase_distance(nil::clifford1_group()[nil::clifford1_index("K")], s * h), 1e-12);
  EXPECT_LT(phase_distance(nil::clifford1_group()[nil::clifford1_index("KH")], s * h * h), 1e-12);
  for (int k = 0; k < 24; ++k) EXPECT_EQ(nil::clifford1_index(nil::clifford1_name(k)), k);
  EXPECT_THROW(nil::clifford1_index("Q"), std::invalid_argument);
}

TEST(Gates, RotationConvention) {
  const double t = 0.37;
  for (char a : {'X', 'Y', 'Z'}) {
    Gate g = Gate::rotation(a, 0, t);
    EXPECT_LT((nil::rotation_matrix(a, t) - oracle::local_gate(g)).norm(), 1e-14);
  }
  EXPECT_LT((nil::gate_unitary(Gate::zz(0, 1, t)) - oracle::local_gate(Gate::zz(0, 1, t))).norm(), 1e-14);
  EXPECT_LT((nil::gate_unitary(Gate::cnot(0, 1)) - oracle::local_gate(Gate::cnot(0, 1))).norm(), 1e-14);
}

TEST(Gates, QuarterTurns) {
  const double q = std::numbers::pi / 2;
  EXPECT_EQ(nil::quarter_turns(0), 0);
  EXPECT_EQ(nil::quarter_turns(3 * q), 3);
  EXPECT_EQ(nil::quarter_turns(-q), 3);
  EXPECT_EQ(nil::quarter_turns(9 * q), 1);
  EXPECT_EQ(nil::quarter_turns(0.1), -1);
  EXPECT_TRUE(nil::gate_is_clifford(Gate::rotation('Y', 0, 2 * q)));
  EXPECT_FALSE(nil::gate_is_clifford(Gate::rotation('Y', 0, 0.3)));
}

// Conjugation tables agree with matrices for every Clifford gate type.
TEST(Gates, CliffordActionMatchesMatrices) {
  std::vector<Gate> gates = {Gate::cz(0, 1), Gate::cnot(0, 1), Gate::cnot(1, 0)};
  for (int k = 0; k < 24; ++k) gates.push_back(Gate::clifford1(k, 0));
  for (int k = 0; k < 4; ++k) {
    gates.push_back(Gate::rotation('X', 1, k * std::numbers::pi / 2));
    gates.push_back(Gate::zz(0, 1, k * std::numbers::pi / 2));
  }
  std::mt19937_64 rng(3);
  for (const auto& g : gates) {
    ASSERT_NE(nil::clifford_action(g), nullptr);
    oracle::Mat U = oracle::gate(g, 2);
    for (int t = 0; t < 16; ++t) {
      nil::PauliString p(2);
      p.set(0, t & 1, t & 2);
      p.set(1, t & 4, t & 8);
      for (bool fwd : {true, false}) {
        nil::PauliString c = p;
        nil::conjugate_by(c, g, fwd);
        oracle::Mat want = fwd ? oracle::Mat(U * oracle::pauli_word(p) * U.adjoint())
                                : oracle::Mat(U.adjoint() * oracle::pauli_word(p) * U);
        EXPECT_LT((oracle::pauli_word(c) - want).norm(), 1e-12) << p.str();
      }
    }
  }
  EXPECT_EQ(nil::clifford_action(Gate::rotation('X', 0, 0.2)), nullptr);
}

}  // namespace
