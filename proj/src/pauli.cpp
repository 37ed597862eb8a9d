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

#include "nil/pauli.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace nil {

PauliString::PauliString(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("PauliString: negative width");
  xs.assign((n + 63) / 64, 0);
  zs.assign((n + 63) / 64, 0);
}

PauliString PauliString::from_string(std::string_view s) {
  int phase = 0;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    if (s[i] == '-') phase = 2;
    ++i;
  }
  if (i < s.size() && s[i] == 'i') {
    phase += 1;
    ++i;
  }
  PauliString p(static_cast<int>(s.size() - i));
  for (int q = 0; i < s.size(); ++i, ++q) {
    switch (s[i]) {
      case 'I': case '_': break;
      case 'X': p.set(q, true, false); break;
      case 'Y': p.set(q, true, true); break;
      case 'Z': p.set(q, false, true); break;
      default:
        throw std::invalid_argument("PauliString: bad character in '" + std::string(s) + "'");
    }
  }
  p.set_phase(phase);
  return p;
}

PauliString PauliString::single(int n, int q, char c) {
  if (q < 0 || q >= n) throw std::out_of_range("PauliString::single: qubit out of range");
  PauliString p(n);
  switch (c) {
    case 'I': break;
    case 'X': p.set(q, true, false); break;
    case 'Y': p.set(q, true, true); break;
    case 'Z': p.set(q, false, true); break;
    default: throw std::invalid_argument("PauliString::single: bad Pauli");
  }
  return p;
}

void PauliString::set(int q, bool xb, bool zb) {
  uint64_t m = uint64_t{1} << (q & 63);
  if (xb) xs[q >> 6] |= m; else xs[q >> 6] &= ~m;
  if (zb) zs[q >> 6] |= m; else zs[q >> 6] &= ~m;
}

char PauliString::at(int q) const {
  static const char kNames[4] = {'I', 'X', 'Z', 'Y'};
  return kNames[x(q) | (z(q) << 1)];
}

bool PauliString::is_identity() const {
  for (std::size_t w = 0; w < xs.size(); ++w)
    if (xs[w] | zs[w]) return false;
  return true;
}

bool PauliString::is_z_type() const {
  for (uint64_t w : xs)
    if (w) return false;
  return true;
}

int PauliString::weight() const {
  int c = 0;
  for (std::size_t w = 0; w < xs.size(); ++w) c += std::popcount(xs[w] | zs[w]);
  return c;
}

std::string PauliString::str() const {
  static const char* kSign[4] = {"+", "+i", "-", "-i"};
  std::string s = kSign[phase_];
  for (int q = 0; q < n_; ++q) s += at(q);
  return s;
}

bool PauliString::operator==(const PauliString& o) const {
  return n_ == o.n_ && phase_ == o.phase_ && xs == o.xs && zs == o.zs;
}

PauliString pauli_multiply(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits())
    throw std::invalid_argument("pauli_multiply: dimension mismatch");
  PauliString r(p.n_qubits());
  int ph = p.phase() + q.phase();
  for (int w = 0; w < p.num_words(); ++w) {
    uint64_t x1 = p.xs[w], z1 = p.zs[w], x2 = q.xs[w], z2 = q.zs[w];
    uint64_t X1 = x1 & ~z1, Y1 = x1 & z1, Z1 = ~x1 & z1;
    uint64_t X2 = x2 & ~z2, Y2 = x2 & z2, Z2 = ~x2 & z2;
    // XY = iZ, YZ = iX, ZX = iY; reversed orders pick up -i.
    uint64_t plus = (X1 & Y2) | (Y1 & Z2) | (Z1 & X2);
    uint64_t minus = (Y1 & X2) | (Z1 & Y2) | (X1 & Z2);
    ph += std::popcount(plus) - std::popcount(minus);
    r.xs[w] = x1 ^ x2;
    r.zs[w] = z1 ^ z2;
  }
  r.set_phase(ph);
  return r;
}

int commutation_sign(const PauliString& q, const PauliString& o) {
  if (q.n_qubits() != o.n_qubits())
    throw std::invalid_argument("commutation_sign: dimension mismatch");
  int par = 0;
  for (int w = 0; w < q.num_words(); ++w)
    par ^= std::popcount((q.xs[w] & o.zs[w]) ^ (q.zs[w] & o.xs[w])) & 1;
  return par ? -1 : 1;
}

bool qubitwise_compatible(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits())
    throw std::invalid_argument("qubitwise_compatible: dimension mismatch");
  for (int w = 0; w < a.num_words(); ++w) {
    uint64_t both = (a.xs[w] | a.zs[w]) & (b.xs[w] | b.zs[w]);
    if (both & ((a.xs[w] ^ b.xs[w]) | (a.zs[w] ^ b.zs[w]))) return false;
  }
  return true;
}

void Observable::add(double coeff, const PauliString& p) {
  if (!std::isfinite(coeff)) throw std::invalid_argument("Observable: non-finite coefficient");
  if (p.phase() != 0) throw std::invalid_argument("Observable: term must be a Hermitian Pauli word");
  if (terms_.empty() && n_ == 0) n_ = p.n_qubits();
  if (p.n_qubits() != n_) throw std::invalid_argument("Observable: width mismatch");
  terms_.push_back({coeff, p});
}

double Observable::l1_norm() const {
  double s = 0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

Observable Observable::parse(std::string_view text) {
  Observable obs;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    double c;
    std::string word;
    if (!(ls >> c)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw std::invalid_argument("Observable::parse: bad coefficient on line " + std::to_string(lineno));
    }
    if (!(ls >> word))
      throw std::invalid_argument("Observable::parse: missing Pauli word on line " + std::to_string(lineno));
    obs.add(c, PauliString::from_string(word));
  }
  if (obs.size() == 0) throw std::invalid_argument("Observable::parse: no terms");
  return obs;
}

std::string Observable::to_text() const {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const auto& t : terms_) out << t.coeff << ' ' << t.pauli.str().substr(1) << '\n';
  return out.str();
}

std::vector<std::vector<int>> group_commuting(const Observable& obs) {
  std::vector<std::vector<int>> groups;
  const auto& terms = obs.terms();
  for (int k = 0; k < static_cast<int>(terms.size()); ++k) {
    bool placed = false;
    for (auto& g : groups) {
      bool ok = true;
      for (int j : g) {
        if (!qubitwise_compatible(terms[j].pauli, terms[k].pauli)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        g.push_back(k);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({k});
  }
  return groups;
}

LatticeGraph LatticeGraph::line(int n) {
  if (n < 1) throw std::invalid_argument("LatticeGraph::line: n must be >= 1");
  LatticeGraph g;
  g.kind = Kind::Line;
  g.n1 = n;
  g.n2 = 1;
  g.vertices = n;
  for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

LatticeGraph LatticeGraph::grid(int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("LatticeGraph::grid: dimensions must be >= 1");
  LatticeGraph g;
  g.kind = Kind::Grid;
  g.n1 = n1;
  g.n2 = n2;
  g.vertices = n1 * n2;
  for (int r = 0; r < n1; ++r)
    for (int c = 0; c + 1 < n2; ++c) g.edges.emplace_back(r * n2 + c, r * n2 + c + 1);
  for (int r = 0; r + 1 < n1; ++r)
    for (int c = 0; c < n2; ++c) g.edges.emplace_back(r * n2 + c, (r + 1) * n2 + c);
  return g;
}

Observable build_tfi(const LatticeGraph& g, double J, double h) {
  if (g.vertices < 1) throw std::invalid_argument("build_tfi: empty graph");
  Observable obs(g.vertices);
  for (auto [a, b] : g.edges) {
    if (a < 0 || b < 0 || a >= g.vertices || b >= g.vertices || a == b)
      throw std::invalid_argument("build_tfi: invalid edge");
    if (J == 0) continue;
    PauliString p(g.vertices);
    p.set(a, false, true);
    p.set(b, false, true);
    obs.add(-J, p);
  }
  if (h != 0)
    for (int v = 0; v < g.vertices; ++v) obs.add(-h, PauliString::single(g.vertices, v, 'X'));
  if (obs.size() == 0) throw std::invalid_argument("build_tfi: observable has no terms");
  return obs;
}

}  // namespace nil
