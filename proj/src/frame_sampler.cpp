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

#include <bit>
#include <cmath>
#include <stdexcept>

#include "nil/stabilizer.hpp"

namespace nil {

FrameSimulator::FrameSimulator(int n, int64_t shots) : n_(n), shots_(shots) {
  if (shots < 1) throw std::invalid_argument("FrameSimulator: shots must be >= 1");
  words_ = static_cast<int>((shots + 63) / 64);
  int tail = static_cast<int>(shots % 64);
  last_mask_ = tail ? (uint64_t{1} << tail) - 1 : ~uint64_t{0};
  x_.assign(static_cast<std::size_t>(n) * words_, 0);
  z_.assign(static_cast<std::size_t>(n) * words_, 0);
}

void FrameSimulator::run(const NoisyCircuit& nc, Rng& rng) {
  if (nc.n_qubits != n_) throw std::invalid_argument("FrameSimulator: width mismatch");
  std::fill(x_.begin(), x_.end(), 0);
  // Z on |0> is a no-op; random Z frames make random outcomes come out random.
  for (auto& w : z_) w = rng();
  for (std::size_t g = 0; g < nc.gates.size(); ++g) {
    apply_gate(nc.gates[g]);
    apply_noise(nc.channels[g], rng);
  }
}

void FrameSimulator::apply_gate(const Gate& g) {
  const CliffordAction* a = clifford_action(g);
  if (!a) throw std::invalid_argument("FrameSimulator: non-Clifford gate");
  const int W = words_;
  if (g.arity() == 1) {
    if (a->gen[0] == 1 && a->gen[1] == 2) return;  // Pauli-like: frame unchanged
    uint64_t mxx = -uint64_t(a->gen[0] & 1), mxz = -uint64_t((a->gen[0] >> 1) & 1);
    uint64_t mzx = -uint64_t(a->gen[1] & 1), mzz = -uint64_t((a->gen[1] >> 1) & 1);
    uint64_t* X = &x_[static_cast<std::size_t>(g.qubits[0]) * W];
    uint64_t* Z = &z_[static_cast<std::size_t>(g.qubits[0]) * W];
    for (int w = 0; w < W; ++w) {
      uint64_t x = X[w], z = Z[w];
      X[w] = (x & mxx) ^ (z & mzx);
      Z[w] = (x & mxz) ^ (z & mzz);
    }
    return;
  }
  if (a->gen[0] == 1 && a->gen[1] == 2 && a->gen[2] == 4 && a->gen[3] == 8) return;
  uint64_t m[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = -uint64_t((a->gen[i] >> j) & 1);
  uint64_t* v[4] = {&x_[static_cast<std::size_t>(g.qubits[0]) * W], &z_[static_cast<std::size_t>(g.qubits[0]) * W],
                    &x_[static_cast<std::size_t>(g.qubits[1]) * W], &z_[static_cast<std::size_t>(g.qubits[1]) * W]};
  for (int w = 0; w < W; ++w) {
    uint64_t in[4] = {v[0][w], v[1][w], v[2][w], v[3][w]};
    for (int j = 0; j < 4; ++j)
      v[j][w] = (in[0] & m[0][j]) ^ (in[1] & m[1][j]) ^ (in[2] & m[2][j]) ^ (in[3] & m[3][j]);
  }
}

void FrameSimulator::apply_noise(const PauliChannel& ch, Rng& rng) {
  double p = ch.error_prob();
  if (p <= 0) return;
  const auto& probs = ch.probs();
  const int np = static_cast<int>(probs.size());
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double log1mp = p < 1 ? std::log1p(-p) : 0.0;
  const int W = words_;
  int64_t s = -1;
  for (;;) {
    if (p >= 1) {
      ++s;
    } else {
      double u = 1.0 - uni(rng);  // (0, 1]
      double skip = std::floor(std::log(u) / log1mp);
      if (skip >= static_cast<double>(shots_)) break;
      s += 1 + static_cast<int64_t>(skip);
    }
    if (s >= shots_) break;
    double r = uni(rng) * p;
    int a = np - 1;
    for (int b = 1; b < np; ++b) {
      r -= probs[b];
      if (r < 0) {
        a = b;
        break;
      }
    }
    uint64_t bit = uint64_t{1} << (s & 63);
    std::size_t w = static_cast<std::size_t>(s >> 6);
    for (int i = 0; i < ch.k(); ++i) {
      int c = (a >> (2 * i)) & 3;
      std::size_t q = static_cast<std::size_t>(ch.qubits()[i]);
      if (c & 1) x_[q * W + w] ^= bit;
      if (c & 2) z_[q * W + w] ^= bit;
    }
  }
}

void FrameSimulator::flips(const PauliString& p, std::vector<uint64_t>& out) const {
  const int W = words_;
  out.assign(W, 0);
  for (int q = 0; q < n_; ++q) {
    bool px = p.x(q), pz = p.z(q);
    if (!px && !pz) continue;
    const uint64_t* X = &x_[static_cast<std::size_t>(q) * W];
    const uint64_t* Z = &z_[static_cast<std::size_t>(q) * W];
    uint64_t mz = -uint64_t(pz), mx = -uint64_t(px);
    for (int w = 0; w < W; ++w) out[w] ^= (X[w] & mz) ^ (Z[w] & mx);
  }
}

int64_t FrameSimulator::count(const std::vector<uint64_t>& bits) const {
  int64_t c = 0;
  for (int w = 0; w + 1 < words_; ++w) c += std::popcount(bits[w]);
  c += std::popcount(bits[words_ - 1] & last_mask_);
  return c;
}

std::vector<int> reference_outcomes(const std::vector<Gate>& gates, int n, const Observable& o,
                                    const std::vector<std::vector<int>>& groups) {
  CliffordTableau base(n);
  base.apply(gates);
  std::vector<int> ref(o.size(), 1);
  for (const auto& g : groups) {
    CliffordTableau t = base;
    for (int k : g) ref[k] = t.measure(o.terms()[k].pauli, 0) ? -1 : 1;
  }
  return ref;
}

Estimate frame_estimate(const NoisyCircuit& nc, const Observable& o, const std::vector<std::vector<int>>& groups,
                        const std::vector<int>& ref, const ShotPlan& plan, uint64_t rng_seed, bool want_variance) {
  if (plan.per_group.size() != groups.size()) throw std::invalid_argument("frame_estimate: plan/group mismatch");
  Estimate est;
  std::vector<std::vector<uint64_t>> bits;
  std::vector<double> mean;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& grp = groups[gi];
    const int64_t s = plan.per_group[gi];
    FrameSimulator fs(nc.n_qubits, s);
    Rng rng = make_rng(rng_seed, {gi});
    fs.run(nc, rng);
    bits.assign(grp.size(), {});
    mean.assign(grp.size(), 0.0);
    for (std::size_t a = 0; a < grp.size(); ++a) {
      int k = grp[a];
      fs.flips(o.terms()[k].pauli, bits[a]);
      double frac = static_cast<double>(fs.count(bits[a])) / static_cast<double>(s);
      mean[a] = ref[k] * (1.0 - 2.0 * frac);
      est.value += o.terms()[k].coeff * mean[a];
    }
    if (want_variance && s > 1) {
      std::vector<uint64_t> tmp;
      double var = 0;
      for (std::size_t a = 0; a < grp.size(); ++a)
        for (std::size_t b = a; b < grp.size(); ++b) {
          double prod;
          if (a == b) {
            prod = 1.0;
          } else {
            tmp.resize(bits[a].size());
            for (std::size_t w = 0; w < tmp.size(); ++w) tmp[w] = bits[a][w] ^ bits[b][w];
            double frac = static_cast<double>(fs.count(tmp)) / static_cast<double>(s);
            prod = ref[grp[a]] * ref[grp[b]] * (1.0 - 2.0 * frac);
          }
          double cov = (prod - mean[a] * mean[b]) * static_cast<double>(s) / static_cast<double>(s - 1);
          double w = o.terms()[grp[a]].coeff * o.terms()[grp[b]].coeff * (a == b ? 1.0 : 2.0);
          var += w * cov;
        }
      est.variance += std::max(0.0, var) / static_cast<double>(s);
    }
  }
  return est;
}

Estimate sample_noisy_estimate(const NoisyCircuit& nc, const Observable& o, const ShotPlan& plan,
                               bool want_variance) {
  if (o.n_qubits() != nc.n_qubits) throw std::invalid_argument("sample_noisy_estimate: width mismatch");
  auto groups = group_commuting(o);
  auto ref = reference_outcomes(nc.gates, nc.n_qubits, o, groups);
  return frame_estimate(nc, o, groups, ref, plan, plan.seed, want_variance);
}

}  // namespace nil
