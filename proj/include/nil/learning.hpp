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
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "nil/features.hpp"

namespace nil {

struct Dataset {
  Eigen::MatrixXd X;         // T x N features
  Eigen::VectorXd y;         // T labels
  Eigen::MatrixXd shot_var;  // T x N estimator variances; empty in exact mode
  nlohmann::json meta = nlohmann::json::object();

  int rows() const { return static_cast<int>(X.rows()); }
  int cols() const { return static_cast<int>(X.cols()); }
};

// Row i uses the shot stream derive_seed(shot_seed, {i}).
Dataset collect_dataset(const std::vector<Circuit>& circuits, const NeighborMap& map, const NoiseModel& model,
                        const Observable& obs, const FeatureMode& mode, uint64_t shot_seed, int threads = 0);

Dataset select_columns(const Dataset& d, const std::vector<int>& cols);

struct SolverReport {
  std::string solver;
  int iterations = 0;
  double objective = 0.0;
  double stationarity = 0.0;  // norm of the projected-gradient mapping
  bool converged = true;
};

struct Estimator {
  Eigen::VectorXd coeffs;
  double gamma = std::numeric_limits<double>::infinity();  // inf for OLS
  SolverReport report;

  double l1_norm() const { return coeffs.lpNorm<1>(); }
};

Estimator fit_ols(const Dataset& d);

struct LassoOptions {
  int max_iter = 100000;
  double rel_tol = 1e-12;
};
Estimator fit_lasso(const Dataset& d, double gamma, const LassoOptions& opt = {});
Estimator fit_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double gamma, const LassoOptions& opt = {});

// Euclidean projection onto {c : |c|_1 <= gamma}.
Eigen::VectorXd project_l1_ball(const Eigen::VectorXd& v, double gamma);

double predict(const Estimator& e, const Eigen::VectorXd& x);
double evaluate_mse(const Estimator& e, const Dataset& d);
// Squared errors per row, for standard errors of the MSE.
Eigen::VectorXd squared_errors(const Eigen::VectorXd& c, const Dataset& d);
// MSE of the raw identity-column value (c = unit vector on that column).
double unmitigated_mse(const Dataset& d, int identity_column);

struct Moments {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  double Y = 0.0;
  Eigen::VectorXd shot_diag;
};
Moments moments(const Dataset& d);

int64_t plan_training_size(double N, double delta, double gamma, double normO, double eps);
int64_t empirical_training_size(double N, double gamma, double eps);
std::pair<double, double> chebyshev_envelope(double eps, double k);

void write_dataset_csv(const std::string& path, const Dataset& d);
nlohmann::json estimator_to_json(const Estimator& e);

}  // namespace nil
