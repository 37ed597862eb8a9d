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

#include <algorithm>
#include <set>

#include "nil/harness.hpp"
#include "oracle.hpp"

namespace {

using Kind = nil::NeighborSpec::Kind;

int arity_sum(const nil::Circuit& c) {
  int s = 0;
  for (const auto& g : c.gates) s += g.arity();
  return s;
}

TEST(Slots, OnePerGateQubit) {
  auto c = nil::build_ansatz(nil::AnsatzSpec::vqe(6, 4, 7));
  auto slots = nil::enumerate_slots(c);
  EXPECT_EQ(static_cast<int>(slots.size()), arity_sum(c));
  EXPECT_EQ(slots.size(), 70u);
  EXPECT_TRUE(std::is_sorted(slots.begin(), slots.end()));
}

TEST(Weight1, IdentityFirstThenThreePaulisPerSlot) {
  auto c = nil::build_ansatz(nil::AnsatzSpec::hva(2, 2, 1));
  auto m = nil::weight1_pauli_map(c);
  const int S = arity_sum(c);
  ASSERT_EQ(static_cast<int>(m.size()), 1 + 3 * S);
  EXPECT_EQ(m.specs[0].kind, Kind::Identity);
  EXPECT_EQ(m.identity_column(), 0);
  std::set<std::pair<nil::InsertionSlot, int>> seen;
  for (std::size_t j = 1; j < m.size(); ++j) {
    ASSERT_EQ(m.specs[j].weight(), 1);
    const auto& in = m.specs[j].insertions[0];
    EXPECT_TRUE(in.op == 'X' || in.op == 'Y' || in.op == 'Z');
    seen.insert({in.slot, in.op});
  }
  EXPECT_EQ(static_cast<int>(seen.size()), 3 * S);
}

TEST(Subset, NestedUnderOneSeed) {
  auto c = nil::build_ansatz(nil::AnsatzSpec::vqe(4, 2, 1));
  auto full = nil::weight1_pauli_map(c);
  nil::Rng a(9), b(9);
  auto small = nil::random_subset_map(full, 5, a);
  auto big = nil::random_subset_map(full, 12, b);
  EXPECT_EQ(small.size(), 6u);
  EXPECT_EQ(big.size(), 13u);
  for (const auto& s : small.specs) EXPECT_NE(std::find(big.specs.begin(), big.specs.end(), s), big.specs.end());
  nil::Rng r(1);
  EXPECT_THROW(nil::random_subset_map(full, static_cast<int>(full.size()), r), std::invalid_argument);

  auto order = nil::nested_column_order(full, 4);
  auto c5 = order.take(5), c9 = order.take(9);
  EXPECT_TRUE(std::includes(c9.begin(), c9.end(), c5.begin(), c5.end()));
  EXPECT_EQ(order.take(0), std::vector<int>{0});
}

TEST(WeightK, DistinctHigherWeightSpecs) {
  auto c = nil::build_ansatz(nil::AnsatzSpec::vqe(3, 1, 1));
  nil::Rng rng(3);
  auto m = nil::weightk_pauli_map(c, 3, 40, rng);
  const int S = arity_sum(c);
  ASSERT_EQ(static_cast<int>(m.size()), 1 + 3 * S + 40);
  std::set<std::vector<nil::Insertion>> uniq;
  for (std::size_t j = 1 + 3 * S; j < m.size(); ++j) {
    int w = m.specs[j].weight();
    EXPECT_TRUE(w == 2 || w == 3);
    EXPECT_TRUE(std::is_sorted(m.specs[j].insertions.begin(), m.specs[j].insertions.end()));
    uniq.insert(m.specs[j].insertions);
  }
  EXPECT_EQ(uniq.size(), 40u);
  EXPECT_THROW(nil::weightk_pauli_map(c, 2, 1000000, rng), std::invalid_argument);
}

TEST(Cptp, NineDistinctCliffordGates) {
  const auto& set = nil::cptp_gate_set();
  ASSERT_EQ(set.size(), 9u);
  std::set<int> idx;
  for (const auto& g : set) {
    EXPECT_GE(g.clifford, 1);
    EXPECT_LT(g.clifford, 24);
    idx.insert(g.clifford);
  }
  EXPECT_EQ(idx.size(), 9u);
  auto c = nil::build_ansatz(nil::AnsatzSpec::vqe(3, 1, 1));
  auto m = nil::cptp_map(c);
  EXPECT_EQ(static_cast<int>(m.size()), 1 + 9 * arity_sum(c));
  nil::Rng rng(2);
  auto base = nil::gen_training_2design(c, rng);
  auto nc = nil::attach_noise(base, {});
  for (const auto& s : m.specs) EXPECT_TRUE(nil::apply(s, nc).all_clifford());
}

TEST(Zne, ScaleColumns) {
  auto m = nil::zne_map(nil::default_zne_alphas());
  ASSERT_EQ(m.size(), 4u);
  EXPECT_TRUE(m.has_noise_scale());
  EXPECT_EQ(m.identity_column(), 0);
  EXPECT_EQ(nil::zne_map({1.1, 1.34}).identity_column(), -1);
  EXPECT_EQ(nil::default_zne_alphas(), (std::vector<double>{1, 1.1, 1.34, 1.58}));
  auto c = nil::build_ansatz(nil::AnsatzSpec::vqe(3, 1, 1));
  EXPECT_EQ(static_cast<int>(nil::zne_plus_pauli_map(c, {1, 2}).size()), 2 + 3 * arity_sum(c));
}

TEST(Apply, InsertionAddsNoNoise) {
  auto c = nil::build_ansatz(nil::AnsatzSpec::vqe(2, 1, 1));
  auto nc = nil::attach_noise(c, {0.01, 0.02, 1});
  auto spec = nil::NeighborSpec::pauli({{{0, 0}, 'X'}, {{2, 1}, 'Z'}});
  auto out = nil::apply(spec, nc);
  EXPECT_EQ(out.gates.size(), nc.gates.size() + 2);
  double noise = 0, base_noise = 0;
  for (const auto& ch : out.channels) noise += ch.error_prob();
  for (const auto& ch : nc.channels) base_noise += ch.error_prob();
  EXPECT_NEAR(noise, base_noise, 1e-15);
}

TEST(NeighborJson, RoundTrip) {
  auto c = nil::build_ansatz(nil::AnsatzSpec::vqe(3, 1, 1));
  nil::Rng rng(5);
  for (auto m : {nil::weight1_pauli_map(c), nil::cptp_map(c), nil::zne_map({1, 1.5}),
                 nil::weightk_pauli_map(c, 2, 10, rng)}) {
    auto back = nil::neighbor_map_from_json(nil::neighbor_map_to_json(m));
    EXPECT_EQ(back.kind, m.kind);
    EXPECT_EQ(back.specs, m.specs);
  }
}

}  // namespace
