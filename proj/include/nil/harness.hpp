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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nil/learning.hpp"
#include "nil/zne.hpp"

namespace nil {

struct ExperimentConfig {
  nlohmann::json raw = nlohmann::json::object();
  std::string text;  // bytes hashed into the report

  Circuit circuit;  // template: from "ansatz" or "circuit_file"
  std::string circuit_label;
  Observable observable;
  NoiseModel noise;
  nlohmann::json neighbors = {{"kind", "pauli-w1"}};

  std::vector<std::string> generators{"2design"};
  std::string test_generator = "uniform";
  int T_train = 5000;
  int T_test = 1000;
  std::optional<int64_t> shots;  // absent: exact features
  bool record_shot_variance = false;

  std::string solver = "lasso";
  std::optional<double> gamma;

  uint64_t seed_circuits = 1;
  uint64_t seed_shots = 2;
  uint64_t seed_subset = 3;

  std::string out;
  int threads = 0;
  bool write_datasets = false;
  std::vector<int> curve_grid;
};

ExperimentConfig config_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);
// Replaces the three seed streams with streams derived from k.
void override_seed(ExperimentConfig& cfg, uint64_t k);

// "2design", "allClifford", "mixed(L)", "uniform", "haar". Circuit i is drawn
// from the stream derive_seed(seed, {i}).
std::vector<Circuit> generate_circuits(const Circuit& tmpl, const std::string& generator, int T, uint64_t seed,
                                       int threads = 0);

// Columns that are never subsampled (identity / noise scales) and the
// insertion columns in a seeded random order; prefixes give nested subsets.
struct ColumnOrder {
  std::vector<int> fixed;
  std::vector<int> shuffled;
  std::vector<int> take(int s) const;
};
ColumnOrder nested_column_order(const NeighborMap& m, uint64_t seed);

NeighborMap build_neighbor_map(const ExperimentConfig& cfg, const Circuit& c);
double default_gamma(const NeighborMap& m);
Estimator fit_estimator(const ExperimentConfig& cfg, const NeighborMap& m, const Dataset& train);

// Git-style blob id: sha1("blob <len>\0" + content), lowercase hex.
std::string git_blob_sha1(const std::string& content);

// Random Clifford circuit on n qubits: layers of random single-qubit
// Cliffords followed by CZ/CNOT on random pairs.
Circuit random_clifford_circuit(int n, int depth, Rng& rng);

// Every command returns a report; "pass" (verify) or the metrics live in it.
nlohmann::json cmd_verify(const ExperimentConfig& cfg);
nlohmann::json cmd_run(const ExperimentConfig& cfg);
// CSV rows "s,train_mse,test_mse"; s = 0 is the unmitigated identity column.
nlohmann::json cmd_curve(const ExperimentConfig& cfg, std::string* csv);
nlohmann::json cmd_compare_zne(const ExperimentConfig& cfg);

struct PlanArgs {
  double N = 0, delta = 0.01, gamma = 2, normO = 1, eps = 0;
  std::string mode = "bound";  // or "empirical"
  int64_t shots = 0;           // for the T * N * N_s execution count
};
nlohmann::json cmd_plan(const PlanArgs& a);

void write_text(const std::string& path, const std::string& text);

}  // namespace nil
