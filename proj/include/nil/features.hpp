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
#include "nil/dense_sim.hpp"
#include "nil/neighbors.hpp"
#include "nil/noise.hpp"
#include "nil/stabilizer.hpp"

namespace nil {

// exact: shot-noise-free features. Otherwise `shots` per neighbor circuit,
// split equally over the commuting groups of the observable.
struct FeatureMode {
  bool exact = true;
  int64_t shots = 0;
  bool want_variance = false;

  static FeatureMode exact_mode() { return {}; }
  static FeatureMode sampled(int64_t shots, bool want_variance = false) { return {false, shots, want_variance}; }
};

struct FeatureRow {
  std::vector<double> x;
  std::vector<double> var;  // estimator variance per feature (sampled mode)
};

// Clifford circuits go through the stabilizer engines at any width; other
// circuits need the density-matrix engine and at most kDensityCap qubits.
FeatureRow estimate_features(const Circuit& base, const NeighborMap& map, const NoiseModel& model,
                             const Observable& obs, const FeatureMode& mode, uint64_t seed);

// Noiseless expectation: tableau path for Clifford circuits, statevector
// otherwise.
double ideal_label(const Circuit& c, const Observable& obs);

// Shot-sampled estimate from a density matrix: each group is measured in its
// shared product basis and bitstrings are drawn from the diagonal.
Estimate sample_from_density(const DensityMatrix& rho, const Observable& obs,
                             const std::vector<std::vector<int>>& groups, const ShotPlan& plan, uint64_t seed,
                             bool want_variance);

}  // namespace nil
