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

#include <random>

#include "oracle.hpp"

namespace {

using nil::Observable;
using nil::PauliString;

PauliString random_word(int n, std::mt19937_64& rng) {
  PauliString p(n);
  for (int q = 0; q < n; ++q) p.set(q, rng() & 1, rng() & 1);
  p.set_phase(static_cast<int>(rng() % 4));
  return p;
}

TEST(Pauli, ParseAndPrint) {
  auto p = PauliString::from_string("-iXIZY");
  EXPECT_EQ(p.n_qubits(), 4);
  EXPECT_EQ(p.at(0), 'X');
  EXPECT_EQ(p.at(1), 'I');
  EXPECT_EQ(p.at(3), 'Y');
  EXPECT_EQ(p.phase(), 3);
  EXPECT_EQ(p.weight(), 3);
  EXPECT_EQ(PauliString::from_string(p.str()), p);
  EXPECT_THROW(PauliString::from_string("XQ"), std::invalid_argument);
}

TEST(Pauli, MultiplyMatchesMatrices) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    int n = 1 + static_cast<int>(rng() % 4);
    auto a = random_word(n, rng), b = random_word(n, rng);
    auto ab = nil::pauli_multiply(a, b);
    EXPECT_LT((oracle::pauli_word(ab) - oracle::pauli_word(a) * oracle::pauli_word(b)).norm(), 1e-12);
    auto ma = oracle::pauli_word(a), mb = oracle::pauli_word(b);
    int expect = (ma * mb - mb * ma).norm() < 1e-12 ? 1 : -1;
    EXPECT_EQ(nil::commutation_sign(a, b), expect);
  }
}

TEST(Pauli, WideWordsCrossWordBoundary) {
  PauliString a(130), b(130);
  a.set(64, true, false);
  a.set(129, false, true);
  b.set(64, false, true);
  EXPECT_EQ(nil::commutation_sign(a, b), -1);
  b.set(129, true, false);
  EXPECT_EQ(nil::commutation_sign(a, b), 1);
  auto ab = nil::pauli_multiply(a, b);
  EXPECT_EQ(ab.at(64), 'Y');
  EXPECT_EQ(ab.at(129), 'Y');
}

TEST(Observable, RejectsBadTerms) {
  Observable o(2);
  EXPECT_THROW(o.add(std::nan(""), PauliString::from_string("XX")), std::invalid_argument);
  EXPECT_THROW(o.add(1.0, PauliString::from_string("iXX")), std::invalid_argument);
  EXPECT_THROW(o.add(1.0, PauliString::from_string("XXX")), std::invalid_argument);
  EXPECT_THROW(Observable::parse("# nothing\n"), std::invalid_argument);
}

TEST(Observable, ParseRoundTrip) {
  auto o = Observable::parse("0.5 XZ  # comment\n-1.25 YY\n");
  ASSERT_EQ(o.size(), 2u);
  EXPECT_DOUBLE_EQ(o.l1_norm(), 1.75);
  auto back = Observable::parse(o.to_text());
  EXPECT_EQ(back.terms()[1].pauli, o.terms()[1].pauli);
  EXPECT_DOUBLE_EQ(back.terms()[1].coeff, -1.25);
}

TEST(Observable, TfiLineAndGrid) {
  auto line = nil::build_tfi(nil::LatticeGraph::line(6), 1.0, 2.0);
  EXPECT_EQ(line.size(), 11u);  // 5 bonds + 6 fields
  EXPECT_DOUBLE_EQ(line.l1_norm(), 5 + 12);
  EXPECT_EQ(line.terms()[0].pauli.str(), "+ZZIIII");
  EXPECT_DOUBLE_EQ(line.terms()[0].coeff, -1.0);
  EXPECT_EQ(line.terms()[5].pauli.str(), "+XIIIII");
  EXPECT_DOUBLE_EQ(line.terms()[5].coeff, -2.0);

  auto g = nil::LatticeGraph::grid(3, 2);
  EXPECT_EQ(g.edges.size(), 7u);  // 3 horizontal + 4 vertical
  EXPECT_EQ(g.edges.front(), std::make_pair(0, 1));
  EXPECT_EQ(g.edges[3], std::make_pair(0, 2));
  EXPECT_EQ(nil::build_tfi(g, 1.0, 2.0).size(), 13u);
  EXPECT_EQ(nil::build_tfi(nil::LatticeGraph::line(3), 0.0, 1.0).size(), 3u);
  EXPECT_THROW(nil::build_tfi(nil::LatticeGraph::line(3), 0.0, 0.0), std::invalid_argument);
}

TEST(Observable, GroupsAreQubitwiseCompatible) {
  auto o = nil::build_tfi(nil::LatticeGraph::grid(3, 3), 1.0, 2.0);
  auto groups = nil::group_commuting(o);
  EXPECT_EQ(groups.size(), 2u);
  std::size_t total = 0;
  for (const auto& g : groups) {
    total += g.size();
    for (int a : g)
      for (int b : g) EXPECT_TRUE(nil::qubitwise_compatible(o.terms()[a].pauli, o.terms()[b].pauli));
  }
  EXPECT_EQ(total, o.size());
}

}  // namespace
