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

#include "nil/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

namespace nil {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
const cd kI(0.0, 1.0);

bool equal_up_to_phase(const Mat2& a, const Mat2& b) {
  Eigen::Index r, c;
  a.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) < 1e-9) return false;
  cd ph = b(r, c) / a(r, c);
  ph /= std::abs(ph);
  return (b - ph * a).norm() < 1e-9;
}

struct CliffordGroup {
  std::vector<Mat2> mats;
  std::vector<std::string> words;
};

Mat2 named(const std::string& t) {
  Mat2 h, s;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  s << 1, 0, 0, kI;
  if (t == "I") return Mat2::Identity();
  if (t == "H") return h;
  if (t == "S") return s;
  if (t == "Sdg") return s.adjoint();
  if (t == "K") return s * h;
  if (t == "Kdg") return (s * h).adjoint();
  if (t == "X" || t == "Y" || t == "Z") return pauli_matrix(t[0]);
  throw std::invalid_argument("unknown gate token " + t);
}

const CliffordGroup& group() {
  static const CliffordGroup g = [] {
    CliffordGroup out;
    out.mats.push_back(Mat2::Identity());
    out.words.push_back("");
    const char* gens[2] = {"H", "S"};
    std::deque<int> q{0};
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      for (const char* gname : gens) {
        Mat2 b = named(gname) * out.mats[a];
        bool seen = false;
        for (const auto& m : out.mats)
          if (equal_up_to_phase(m, b)) { seen = true; break; }
        if (seen) continue;
        out.mats.push_back(b);
        out.words.push_back(std::string(gname) + out.words[a]);
        q.push_back(static_cast<int>(out.mats.size()) - 1);
      }
    }
    out.words[0] = "I";
    return out;
  }();
  return g;
}

const char* kAliases[] = {"I", "X", "Y", "Z", "H", "S", "Sdg"};

struct ActionCache {
  std::vector<CliffordAction> c1;
  std::array<std::array<int, 4>, 3> rot{};  // axis, quarter turns -> c1 index
  std::array<CliffordAction, 4> zz;
  CliffordAction cz, cnot;
};

const ActionCache& actions() {
  static const ActionCache cache = [] {
    ActionCache c;
    for (const auto& m : clifford1_group()) c.c1.push_back(make_clifford_action(m));
    const char axes[3] = {'X', 'Y', 'Z'};
    for (int a = 0; a < 3; ++a)
      for (int k = 0; k < 4; ++k) c.rot[a][k] = clifford1_find(rotation_matrix(axes[a], k * kHalfPi));
    for (int k = 0; k < 4; ++k) c.zz[k] = make_clifford_action(zz_matrix(k * kHalfPi));
    c.cz = make_clifford_action(gate_unitary(Gate::cz(0, 1)));
    c.cnot = make_clifford_action(gate_unitary(Gate::cnot(0, 1)));
    return c;
  }();
  return cache;
}

int axis_index(char a) {
  switch (a) {
    case 'X': return 0;
    case 'Y': return 1;
    case 'Z': return 2;
  }
  throw std::invalid_argument(std::string("bad rotation axis ") + a);
}

}  // namespace

Gate Gate::rotation(char axis, int q, double angle, bool param, int layer) {
  axis_index(axis);
  Gate g;
  g.kind = GateKind::Rotation;
  g.axis = axis;
  g.qubits = {q, -1};
  g.angle = angle;
  g.param = param;
  g.layer = layer;
  return g;
}

Gate Gate::zz(int a, int b, double angle, bool param, int layer) {
  Gate g;
  g.kind = GateKind::ZZRotation;
  g.qubits = {a, b};
  g.angle = angle;
  g.param = param;
  g.layer = layer;
  return g;
}

Gate Gate::clifford1(int index, int q, int layer) {
  if (index < 0 || index >= 24) throw std::out_of_range("Gate::clifford1: index out of range");
  Gate g;
  g.kind = GateKind::Clifford1;
  g.clifford = index;
  g.qubits = {q, -1};
  g.layer = layer;
  return g;
}

Gate Gate::cz(int a, int b, int layer) {
  Gate g;
  g.kind = GateKind::Clifford2;
  g.two = TwoQubitClifford::CZ;
  g.qubits = {a, b};
  g.layer = layer;
  return g;
}

Gate Gate::cnot(int control, int target, int layer) {
  Gate g = cz(control, target, layer);
  g.two = TwoQubitClifford::CNOT;
  return g;
}

Gate Gate::haar(const Mat2& u, int q, int layer) {
  Gate g;
  g.kind = GateKind::Unitary1;
  g.unitary = u;
  g.qubits = {q, -1};
  g.layer = layer;
  return g;
}

Mat2 pauli_matrix(char p) {
  Mat2 m;
  switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli_matrix: bad Pauli");
  }
  return m;
}

Mat2 rotation_matrix(char axis, double theta) {
  return std::cos(theta / 2) * Mat2::Identity() - kI * std::sin(theta / 2) * pauli_matrix(axis);
}

Mat4 zz_matrix(double theta) {
  Mat4 m = Mat4::Zero();
  for (int i = 0; i < 4; ++i) {
    double zz = ((i & 1) ^ (i >> 1)) ? -1.0 : 1.0;
    m(i, i) = std::exp(-kI * (theta / 2) * zz);
  }
  return m;
}

Eigen::MatrixXcd gate_unitary(const Gate& g) {
  switch (g.kind) {
    case GateKind::Rotation: return rotation_matrix(g.axis, g.angle);
    case GateKind::ZZRotation: return zz_matrix(g.angle);
    case GateKind::Clifford1: return clifford1_group().at(g.clifford);
    case GateKind::Unitary1: return g.unitary;
    case GateKind::Clifford2: {
      Mat4 m = Mat4::Zero();
      if (g.two == TwoQubitClifford::CZ) {
        m.diagonal() << 1, 1, 1, -1;
      } else {
        m(0, 0) = m(2, 2) = 1;
        m(3, 1) = m(1, 3) = 1;
      }
      return m;
    }
  }
  throw std::logic_error("gate_unitary: unknown kind");
}

const std::vector<Mat2>& clifford1_group() { return group().mats; }

int clifford1_find(const Mat2& u) {
  const auto& mats = clifford1_group();
  for (int i = 0; i < static_cast<int>(mats.size()); ++i)
    if (equal_up_to_phase(mats[i], u)) return i;
  return -1;
}

int clifford1_index(const std::string& name) {
  if (name.size() > 1 && name[0] == 'C' && std::isdigit(static_cast<unsigned char>(name[1]))) {
    int k = std::stoi(name.substr(1));
    if (k < 0 || k >= 24) throw std::invalid_argument("clifford1_index: " + name);
    return k;
  }
  // Left-to-right matrix product of tokens, e.g. "KdgSdgK" = Kdg * Sdg * K.
  static const char* kTokens[] = {"Kdg", "Sdg", "K", "S", "H", "X", "Y", "Z", "I"};
  Mat2 m = Mat2::Identity();
  std::size_t i = 0;
  if (name.empty()) throw std::invalid_argument("clifford1_index: empty name");
  while (i < name.size()) {
    bool hit = false;
    for (const char* t : kTokens) {
      std::string ts(t);
      if (name.compare(i, ts.size(), ts) == 0) {
        m = m * named(ts);
        i += ts.size();
        hit = true;
        break;
      }
    }
    if (!hit) throw std::invalid_argument("clifford1_index: unknown name " + name);
  }
  return clifford1_find(m);
}

std::string clifford1_name(int index) {
  const auto& mats = clifford1_group();
  if (index < 0 || index >= static_cast<int>(mats.size()))
    throw std::out_of_range("clifford1_name: index out of range");
  for (const char* a : kAliases)
    if (equal_up_to_phase(named(a), mats[index])) return a;
  return group().words[index];
}

int quarter_turns(double angle) {
  if (!std::isfinite(angle)) return -1;
  double k = std::round(angle / kHalfPi);
  if (std::abs(angle - k * kHalfPi) > 1e-12 * std::max(1.0, std::abs(angle))) return -1;
  long long ki = static_cast<long long>(k);
  return static_cast<int>(((ki % 4) + 4) % 4);
}

bool gate_is_clifford(const Gate& g) {
  switch (g.kind) {
    case GateKind::Rotation:
    case GateKind::ZZRotation: return quarter_turns(g.angle) >= 0;
    case GateKind::Clifford1:
    case GateKind::Clifford2: return true;
    case GateKind::Unitary1: return false;
  }
  return false;
}

Eigen::MatrixXcd local_pauli_matrix(int index, int k) {
  static const char kCode[4] = {'I', 'X', 'Z', 'Y'};
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int i = k - 1; i >= 0; --i) {
    Mat2 p = pauli_matrix(kCode[(index >> (2 * i)) & 3]);
    Eigen::MatrixXcd out(m.rows() * 2, m.cols() * 2);
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) out.block(2 * r, 2 * c, 2, 2) = m(r, c) * p;
    m = out;
  }
  return m;
}

CliffordAction make_clifford_action(const Eigen::MatrixXcd& u) {
  int k = u.rows() == 2 ? 1 : 2;
  if (u.rows() != (1 << k)) throw std::invalid_argument("make_clifford_action: size must be 2 or 4");
  int np = 1 << (2 * k);
  double d = static_cast<double>(u.rows());
  std::vector<Eigen::MatrixXcd> paulis;
  for (int p = 0; p < np; ++p) paulis.push_back(local_pauli_matrix(p, k));
  CliffordAction a;
  a.fwd.k = a.inv.k = k;
  a.fwd.img.assign(np, 0);
  a.fwd.sign.assign(np, 1);
  a.inv.img.assign(np, 0);
  a.inv.sign.assign(np, 1);
  for (int p = 0; p < np; ++p) {
    Eigen::MatrixXcd m = u * paulis[p] * u.adjoint();
    int found = -1;
    int sign = 1;
    for (int c = 0; c < np; ++c) {
      cd t = (paulis[c] * m).trace() / d;
      if (std::abs(t - 1.0) < 1e-9) { found = c; sign = 1; break; }
      if (std::abs(t + 1.0) < 1e-9) { found = c; sign = -1; break; }
    }
    if (found < 0) throw std::invalid_argument("make_clifford_action: unitary is not Clifford");
    a.fwd.img[p] = static_cast<uint8_t>(found);
    a.fwd.sign[p] = static_cast<int8_t>(sign);
    a.inv.img[found] = static_cast<uint8_t>(p);
    a.inv.sign[found] = static_cast<int8_t>(sign);
  }
  for (int i = 0; i < 2 * k; ++i) a.gen[i] = a.fwd.img[1 << i];
  return a;
}

const CliffordAction* clifford_action(const Gate& g) {
  const auto& c = actions();
  switch (g.kind) {
    case GateKind::Rotation: {
      int k = quarter_turns(g.angle);
      if (k < 0) return nullptr;
      return &c.c1[c.rot[axis_index(g.axis)][k]];
    }
    case GateKind::ZZRotation: {
      int k = quarter_turns(g.angle);
      if (k < 0) return nullptr;
      return &c.zz[k];
    }
    case GateKind::Clifford1: return &c.c1.at(g.clifford);
    case GateKind::Clifford2: return g.two == TwoQubitClifford::CZ ? &c.cz : &c.cnot;
    case GateKind::Unitary1: return nullptr;
  }
  return nullptr;
}

int local_pauli_index(const PauliString& p, const int* qubits, int k) {
  int idx = 0;
  for (int i = 0; i < k; ++i) idx |= (p.x(qubits[i]) | (p.z(qubits[i]) << 1)) << (2 * i);
  return idx;
}

void conjugate_by(PauliString& p, const CliffordAction& a, const int* qubits, int k, bool forward) {
  int idx = local_pauli_index(p, qubits, k);
  const PauliTable& t = forward ? a.fwd : a.inv;
  int out = t.img[idx];
  for (int i = 0; i < k; ++i) p.set(qubits[i], (out >> (2 * i)) & 1, (out >> (2 * i + 1)) & 1);
  if (t.sign[idx] < 0) p.add_phase(2);
}

void conjugate_by(PauliString& p, const Gate& g, bool forward) {
  const CliffordAction* a = clifford_action(g);
  if (!a) throw std::invalid_argument("conjugate_by: gate is not Clifford");
  conjugate_by(p, *a, g.qubits.data(), g.arity(), forward);
}

}  // namespace nil
