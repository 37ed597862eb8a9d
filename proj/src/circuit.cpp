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

#include "nil/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nil {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2;

double quarter_angle(Rng& rng) {
  std::uniform_int_distribution<int> d(0, 3);
  return d(rng) * kHalfPi;
}

double uniform_angle(Rng& rng) {
  std::uniform_real_distribution<double> d(0.0, kTwoPi);
  return d(rng);
}

}  // namespace

void Circuit::add(const Gate& g) {
  for (int i = 0; i < g.arity(); ++i)
    if (g.qubits[i] < 0 || g.qubits[i] >= n_qubits)
      throw std::out_of_range("Circuit::add: qubit index out of range");
  if (g.arity() == 2 && g.qubits[0] == g.qubits[1])
    throw std::invalid_argument("Circuit::add: two-qubit gate on a single qubit");
  if (g.is_rotation() && !std::isfinite(g.angle)) throw std::invalid_argument("Circuit::add: non-finite angle");
  if (!gates.empty() && g.layer < gates.back().layer)
    throw std::invalid_argument("Circuit::add: layer indices must be non-decreasing");
  gates.push_back(g);
}

int Circuit::num_layers() const { return gates.empty() ? 0 : gates.back().layer; }

int Circuit::num_params() const {
  int c = 0;
  for (const auto& g : gates) c += g.is_rotation() && g.param;
  return c;
}

AnsatzSpec AnsatzSpec::vqe(int n, int m, uint64_t axis_seed) {
  AnsatzSpec s;
  s.family = Family::Vqe;
  s.n = n;
  s.m = m;
  s.axis_seed = axis_seed;
  return s;
}

AnsatzSpec AnsatzSpec::vqe_ry(int n, int m) {
  AnsatzSpec s;
  s.family = Family::VqeRy;
  s.n = n;
  s.m = m;
  return s;
}

AnsatzSpec AnsatzSpec::hva(int n1, int n2, int m) {
  AnsatzSpec s;
  s.family = Family::Hva;
  s.n1 = n1;
  s.n2 = n2;
  s.m = m;
  return s;
}

int AnsatzSpec::n_qubits() const { return family == Family::Hva ? n1 * n2 : n; }

std::string AnsatzSpec::label() const {
  switch (family) {
    case Family::Vqe: return "vqe-" + std::to_string(n) + "-" + std::to_string(m);
    case Family::VqeRy: return "vqeRy-" + std::to_string(n) + "-" + std::to_string(m);
    case Family::Hva:
      return "hva-" + std::to_string(n1) + "x" + std::to_string(n2) + "-" + std::to_string(m);
  }
  return "?";
}

LatticeGraph AnsatzSpec::graph() const {
  return family == Family::Hva ? LatticeGraph::grid(n1, n2) : LatticeGraph::line(n);
}

Circuit build_ansatz(const AnsatzSpec& spec) {
  Circuit c;
  if (spec.m < 1) throw std::invalid_argument("build_ansatz: m must be >= 1");
  int layer = 0;
  auto cz_layer = [&](int parity) {
    ++layer;
    for (int q = parity; q + 1 < c.n_qubits; q += 2) c.add(Gate::cz(q, q + 1, layer));
  };
  switch (spec.family) {
    case AnsatzSpec::Family::Vqe: {
      if (spec.n < 1) throw std::invalid_argument("build_ansatz: n must be >= 1");
      c.n_qubits = spec.n;
      Rng rng = make_rng(spec.axis_seed, {kTagAxes});
      std::uniform_int_distribution<int> pick(0, 2);
      const char axes[3] = {'X', 'Y', 'Z'};
      auto rot_layer = [&] {
        ++layer;
        for (int q = 0; q < c.n_qubits; ++q) c.add(Gate::rotation(axes[pick(rng)], q, 0.0, true, layer));
      };
      for (int b = 0; b < spec.m; ++b) {
        rot_layer();
        cz_layer(0);
        cz_layer(1);
      }
      rot_layer();
      break;
    }
    case AnsatzSpec::Family::VqeRy: {
      if (spec.n < 1) throw std::invalid_argument("build_ansatz: n must be >= 1");
      c.n_qubits = spec.n;
      auto ry_layer = [&] {
        ++layer;
        for (int q = 0; q < c.n_qubits; ++q) c.add(Gate::rotation('Y', q, 0.0, true, layer));
      };
      for (int b = 0; b < spec.m; ++b) {
        ry_layer();
        cz_layer(0);
        ry_layer();
        cz_layer(1);
      }
      ry_layer();
      break;
    }
    case AnsatzSpec::Family::Hva: {
      if (spec.n1 < 1 || spec.n2 < 1) throw std::invalid_argument("build_ansatz: grid dimensions must be >= 1");
      int n1 = spec.n1, n2 = spec.n2;
      c.n_qubits = n1 * n2;
      for (int b = 0; b < spec.m; ++b) {
        for (int parity = 0; parity < 2; ++parity) {
          ++layer;
          for (int r = 0; r < n1; ++r)
            for (int col = parity; col + 1 < n2; col += 2)
              c.add(Gate::zz(r * n2 + col, r * n2 + col + 1, 0.0, true, layer));
        }
        for (int parity = 0; parity < 2; ++parity) {
          ++layer;
          for (int r = parity; r + 1 < n1; r += 2)
            for (int col = 0; col < n2; ++col) c.add(Gate::zz(r * n2 + col, (r + 1) * n2 + col, 0.0, true, layer));
        }
        ++layer;
        for (int q = 0; q < c.n_qubits; ++q) c.add(Gate::rotation('X', q, 0.0, true, layer));
      }
      break;
    }
  }
  return c;
}

Circuit bind_uniform(const Circuit& c, Rng& rng) {
  Circuit out = c;
  for (auto& g : out.gates)
    if (g.is_rotation() && g.param) g.angle = uniform_angle(rng);
  return out;
}

Circuit gen_training_2design(const Circuit& c, Rng& rng) {
  Circuit out = c;
  for (auto& g : out.gates)
    if (g.is_rotation() && g.param) g.angle = quarter_angle(rng);
  return out;
}

Circuit gen_training_all_clifford(const Circuit& c, Rng& rng) {
  Circuit out = c;
  std::uniform_int_distribution<int> pick(0, 23);
  for (auto& g : out.gates) {
    if (!g.param) continue;
    if (g.kind == GateKind::Rotation) {
      g = Gate::clifford1(pick(rng), g.qubits[0], g.layer);
      g.param = true;  // still a variational slot
    } else if (g.kind == GateKind::ZZRotation) {
      g.angle = quarter_angle(rng);
    }
  }
  return out;
}

Circuit gen_training_mixed(const Circuit& c, int L, Rng& rng) {
  if (L < 0) throw std::invalid_argument("gen_training_mixed: L must be >= 0");
  Circuit out = c;
  for (auto& g : out.gates)
    if (g.is_rotation() && g.param) g.angle = g.layer <= L ? uniform_angle(rng) : quarter_angle(rng);
  return out;
}

Mat2 haar_unitary(Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Mat2 z;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) z(i, j) = cd(nd(rng), nd(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<Mat2> qr(z);
  Mat2 q = qr.householderQ();
  Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < 2; ++i) {
    cd d = r(i, i);
    q.col(i) *= std::abs(d) > 0 ? d / std::abs(d) : cd(1.0);
  }
  return q;
}

// Single-qubit rotation slots become Haar gates; remaining parametric
// rotations get uniform angles so the output is fully bound.
Circuit haar_single_qubit_test_circuit(const Circuit& c, Rng& rng) {
  Circuit out = c;
  for (auto& g : out.gates) {
    if (!g.param) continue;
    if (g.kind == GateKind::Rotation) {
      int layer = g.layer;
      g = Gate::haar(haar_unitary(rng), g.qubits[0], layer);
      g.param = true;
    } else if (g.kind == GateKind::ZZRotation) {
      g.angle = uniform_angle(rng);
    }
  }
  return out;
}

bool is_clifford(const Circuit& c) {
  for (const auto& g : c.gates)
    if (!gate_is_clifford(g)) return false;
  return true;
}

nlohmann::json circuit_to_json(const Circuit& c) {
  using nlohmann::json;
  json gates = json::array();
  json layers = json::array();
  for (const auto& g : c.gates) {
    json jg;
    jg["qubits"] = g.arity() == 1 ? json::array({g.qubits[0]}) : json::array({g.qubits[0], g.qubits[1]});
    switch (g.kind) {
      case GateKind::Rotation:
        jg["kind"] = "rotation";
        jg["axis"] = std::string(1, g.axis);
        jg["angle"] = g.angle;
        break;
      case GateKind::ZZRotation:
        jg["kind"] = "zz";
        jg["axis"] = "ZZ";
        jg["angle"] = g.angle;
        break;
      case GateKind::Clifford1:
        jg["kind"] = "clifford1";
        jg["name"] = clifford1_name(g.clifford);
        break;
      case GateKind::Clifford2:
        jg["kind"] = "clifford2";
        jg["name"] = g.two == TwoQubitClifford::CZ ? "CZ" : "CNOT";
        break;
      case GateKind::Unitary1: {
        jg["kind"] = "unitary";
        json u = json::array();
        for (int r = 0; r < 2; ++r)
          for (int col = 0; col < 2; ++col) u.push_back({g.unitary(r, col).real(), g.unitary(r, col).imag()});
        jg["unitary"] = u;
        break;
      }
    }
    if (g.param) jg["param"] = true;
    gates.push_back(jg);
    layers.push_back(g.layer);
  }
  return json{{"n_qubits", c.n_qubits}, {"gates", gates}, {"layers", layers}};
}

Circuit circuit_from_json(const nlohmann::json& j) {
  Circuit c;
  c.n_qubits = j.at("n_qubits").get<int>();
  const auto& gates = j.at("gates");
  const nlohmann::json* layers = j.contains("layers") ? &j.at("layers") : nullptr;
  if (layers && layers->size() != gates.size())
    throw std::invalid_argument("circuit_from_json: layers length mismatch");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& jg = gates[i];
    std::string kind = jg.at("kind").get<std::string>();
    std::vector<int> qs = jg.at("qubits").get<std::vector<int>>();
    int layer = layers ? (*layers)[i].get<int>() : jg.value("layer", 0);
    bool param = jg.value("param", false);
    double angle = 0.0;
    if (jg.contains("angle")) {
      if (jg["angle"].is_string()) {
        if (jg["angle"].get<std::string>() != "param") throw std::invalid_argument("circuit_from_json: bad angle");
        param = true;
      } else {
        angle = jg["angle"].get<double>();
      }
    }
    auto need = [&](std::size_t k) {
      if (qs.size() != k) throw std::invalid_argument("circuit_from_json: wrong qubit count for " + kind);
    };
    Gate g;
    if (kind == "rotation") {
      need(1);
      std::string ax = jg.at("axis").get<std::string>();
      if (ax.size() != 1) throw std::invalid_argument("circuit_from_json: bad axis " + ax);
      g = Gate::rotation(ax[0], qs[0], angle, param, layer);
    } else if (kind == "zz") {
      need(2);
      g = Gate::zz(qs[0], qs[1], angle, param, layer);
    } else if (kind == "clifford1") {
      need(1);
      g = Gate::clifford1(clifford1_index(jg.at("name").get<std::string>()), qs[0], layer);
      g.param = param;
    } else if (kind == "clifford2") {
      need(2);
      std::string name = jg.at("name").get<std::string>();
      if (name == "CZ") g = Gate::cz(qs[0], qs[1], layer);
      else if (name == "CNOT") g = Gate::cnot(qs[0], qs[1], layer);
      else throw std::invalid_argument("circuit_from_json: unknown two-qubit gate " + name);
    } else if (kind == "unitary") {
      need(1);
      Mat2 u;
      const auto& ju = jg.at("unitary");
      for (int r = 0; r < 2; ++r)
        for (int col = 0; col < 2; ++col) u(r, col) = cd(ju[2 * r + col][0].get<double>(), ju[2 * r + col][1].get<double>());
      g = Gate::haar(u, qs[0], layer);
      g.param = param;
    } else {
      throw std::invalid_argument("circuit_from_json: unknown gate kind " + kind);
    }
    c.add(g);
  }
  return c;
}

nlohmann::json ansatz_to_json(const AnsatzSpec& s) {
  switch (s.family) {
    case AnsatzSpec::Family::Vqe:
      return {{"family", "vqe"}, {"n", s.n}, {"m", s.m}, {"axis_seed", s.axis_seed}};
    case AnsatzSpec::Family::VqeRy: return {{"family", "vqeRy"}, {"n", s.n}, {"m", s.m}};
    case AnsatzSpec::Family::Hva: return {{"family", "hva"}, {"n1", s.n1}, {"n2", s.n2}, {"m", s.m}};
  }
  return {};
}

AnsatzSpec ansatz_from_json(const nlohmann::json& j) {
  std::string f = j.at("family").get<std::string>();
  if (f == "vqe") return AnsatzSpec::vqe(j.at("n").get<int>(), j.at("m").get<int>(), j.value("axis_seed", uint64_t{0}));
  if (f == "vqeRy") return AnsatzSpec::vqe_ry(j.at("n").get<int>(), j.at("m").get<int>());
  if (f == "hva") return AnsatzSpec::hva(j.at("n1").get<int>(), j.at("n2").get<int>(), j.at("m").get<int>());
  throw std::invalid_argument("ansatz_from_json: unknown family " + f);
}

}  // namespace nil
