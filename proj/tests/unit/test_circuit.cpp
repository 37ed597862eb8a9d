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
#include <set>

#include "nil/harness.hpp"
#include "oracle.hpp"

namespace {

using nil::AnsatzSpec;
using nil::Circuit;

int non_clifford_rotations(const Circuit& c) {
  int k = 0;
  for (const auto& g : c.gates) k += g.is_rotation() && !nil::gate_is_clifford(g);
  return k;
}

TEST(Ansatz, LayerAndGateCounts) {
  Circuit v = nil::build_ansatz(AnsatzSpec::vqe(6, 4, 7));
  EXPECT_EQ(v.n_qubits, 6);
  EXPECT_EQ(v.num_layers(), 13);
  EXPECT_EQ(v.num_params(), 30);  // 5 rotation layers of 6
  Circuit r = nil::build_ansatz(AnsatzSpec::vqe_ry(6, 4));
  EXPECT_EQ(r.num_layers(), 17);
  EXPECT_EQ(r.num_params(), 54);
  Circuit h = nil::build_ansatz(AnsatzSpec::hva(3, 2, 2));
  EXPECT_EQ(h.n_qubits, 6);
  EXPECT_EQ(h.num_params(), 2 * (7 + 6));
  for (const auto& g : h.gates) EXPECT_TRUE(g.is_rotation());
  EXPECT_EQ(AnsatzSpec::vqe(6, 4).label(), "vqe-6-4");
}

TEST(Ansatz, AxisSeedChangesAxesOnly) {
  Circuit a = nil::build_ansatz(AnsatzSpec::vqe(4, 2, 1));
  Circuit b = nil::build_ansatz(AnsatzSpec::vqe(4, 2, 2));
  ASSERT_EQ(a.gates.size(), b.gates.size());
  bool differ = false;
  for (std::size_t i = 0; i < a.gates.size(); ++i) differ |= a.gates[i].axis != b.gates[i].axis;
  EXPECT_TRUE(differ);
}

TEST(Generators, TwoDesignAnglesAreQuarterTurns) {
  Circuit t = nil::build_ansatz(AnsatzSpec::hva(2, 2, 2));
  nil::Rng rng(1);
  std::set<int> seen;
  for (int i = 0; i < 20; ++i) {
    Circuit c = nil::gen_training_2design(t, rng);
    EXPECT_TRUE(nil::is_clifford(c));
    for (const auto& g : c.gates) seen.insert(nil::quarter_turns(g.angle));
  }
  EXPECT_EQ(seen, (std::set<int>{0, 1, 2, 3}));
  Circuit fixed = nil::random_clifford_circuit(3, 2, rng);
  Circuit same = nil::gen_training_2design(fixed, rng);
  ASSERT_EQ(same.gates.size(), fixed.gates.size());
  for (std::size_t i = 0; i < same.gates.size(); ++i) EXPECT_EQ(same.gates[i].clifford, fixed.gates[i].clifford);
}

TEST(Generators, AllCliffordUsesWholeGroup) {
  Circuit t = nil::build_ansatz(AnsatzSpec::vqe(4, 2, 1));
  nil::Rng rng(2);
  std::set<int> seen;
  for (int i = 0; i < 50; ++i) {
    Circuit c = nil::gen_training_all_clifford(t, rng);
    EXPECT_TRUE(nil::is_clifford(c));
    for (const auto& g : c.gates)
      if (g.kind == nil::GateKind::Clifford1 && g.param) seen.insert(g.clifford);
  }
  EXPECT_EQ(seen.size(), 24u);
}

TEST(Generators, MixedKeepsFirstLayersNonClifford) {
  Circuit t = nil::build_ansatz(AnsatzSpec::vqe(6, 4, 7));
  nil::Rng rng(3);
  Circuit c = nil::gen_training_mixed(t, 1, rng);
  EXPECT_EQ(non_clifford_rotations(c), 6);
  for (const auto& g : c.gates)
    if (g.layer > 1 && g.is_rotation()) {
      EXPECT_GE(nil::quarter_turns(g.angle), 0);
    }
  EXPECT_EQ(non_clifford_rotations(nil::gen_training_mixed(t, 0, rng)), 0);
}

TEST(Generators, HaarCircuitsUseUnitaryGates) {
  Circuit t = nil::build_ansatz(AnsatzSpec::vqe(3, 1, 1));
  nil::Rng rng(4);
  Circuit c = nil::haar_single_qubit_test_circuit(t, rng);
  int unitaries = 0;
  for (const auto& g : c.gates) {
    if (g.kind != nil::GateKind::Unitary1) continue;
    ++unitaries;
    EXPECT_LT((g.unitary.adjoint() * g.unitary - nil::Mat2::Identity()).norm(), 1e-12);
  }
  EXPECT_EQ(unitaries, t.num_params());
}

TEST(Circuit, RejectsBadGates) {
  Circuit c;
  c.n_qubits = 2;
  EXPECT_THROW(c.add(nil::Gate::rotation('X', 2, 0.1)), std::out_of_range);
  EXPECT_THROW(c.add(nil::Gate::cz(1, 1)), std::invalid_argument);
  EXPECT_THROW(c.add(nil::Gate::rotation('X', 0, std::nan(""))), std::invalid_argument);
}

TEST(Circuit, JsonRoundTrip) {
  nil::Rng rng(5);
  Circuit t = nil::haar_single_qubit_test_circuit(nil::build_ansatz(AnsatzSpec::hva(2, 2, 1)), rng);
  t.add(nil::Gate::cnot(1, 0, 99));
  t.add(nil::Gate::clifford1(nil::clifford1_index("S"), 2, 99));
  Circuit back = nil::circuit_from_json(nil::circuit_to_json(t));
  auto o = nil::build_tfi(nil::LatticeGraph::grid(2, 2), 1, 2);
  EXPECT_NEAR(oracle::ideal(back, o), oracle::ideal(t, o), 1e-12);
  EXPECT_EQ(back.gates.size(), t.gates.size());
  auto spec = nil::ansatz_from_json(nil::ansatz_to_json(AnsatzSpec::vqe(5, 3, 9)));
  EXPECT_EQ(spec.label(), "vqe-5-3");
  EXPECT_EQ(spec.axis_seed, 9u);
}

}  // namespace
