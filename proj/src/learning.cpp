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

#include "nil/learning.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace nil {

Dataset collect_dataset(const std::vector<Circuit>& circuits, const NeighborMap& map, const NoiseModel& model,
                        const Observable& obs, const FeatureMode& mode, uint64_t shot_seed, int threads) {
  const int T = static_cast<int>(circuits.size());
  const int N = static_cast<int>(map.size());
  Dataset d;
  d.X.resize(T, N);
  d.y.resize(T);
  if (!mode.exact && mode.want_variance) d.shot_var.resize(T, N);
  parallel_for(T, threads, [&](int i) {
    FeatureRow row = estimate_features(circuits[i], map, model, obs, mode, derive_seed(shot_seed, {uint64_t(i)}));
    for (int j = 0; j < N; ++j) d.X(i, j) = row.x[j];
    if (d.shot_var.size())
      for (int j = 0; j < N; ++j) d.shot_var(i, j) = row.var[j];
    d.y(i) = ideal_label(circuits[i], obs);
  });
  d.meta = {{"mode", mode.exact ? "exact" : "sampled"},
            {"shots", mode.exact ? 0 : mode.shots},
            {"map", map.kind},
            {"neighbors", N},
            {"shot_seed", shot_seed}};
  return d;
}

Dataset select_columns(const Dataset& d, const std::vector<int>& cols) {
  Dataset out;
  out.X.resize(d.rows(), static_cast<Eigen::Index>(cols.size()));
  if (d.shot_var.size()) out.shot_var.resize(d.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    out.X.col(j) = d.X.col(cols[j]);
    if (d.shot_var.size()) out.shot_var.col(j) = d.shot_var.col(cols[j]);
  }
  out.y = d.y;
  out.meta = d.meta;
  return out;
}

Estimator fit_ols(const Dataset& d) {
  if (d.rows() < 1) throw std::invalid_argument("fit_ols: empty dataset");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(d.X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  Estimator e;
  e.coeffs = svd.solve(d.y);
  e.report.solver = "ols-pinv";
  e.report.objective = (d.X * e.coeffs - d.y).squaredNorm() / d.rows();
  e.report.iterations = 0;
  e.report.stationarity = (2.0 / d.rows() * d.X.transpose() * (d.X * e.coeffs - d.y)).norm();
  return e;
}

Eigen::VectorXd project_l1_ball(const Eigen::VectorXd& v, double gamma) {
  if (!(gamma > 0)) throw std::invalid_argument("project_l1_ball: gamma must be > 0");
  if (std::isinf(gamma) || v.lpNorm<1>() <= gamma) return v;
  std::vector<double> u(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) u[i] = std::abs(v[i]);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cs = 0, theta = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cs += u[j];
    double t = (cs - gamma) / static_cast<double>(j + 1);
    if (u[j] - t > 0) theta = t;
  }
  Eigen::VectorXd w(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double a = std::max(std::abs(v[i]) - theta, 0.0);
    w[i] = v[i] < 0 ? -a : a;
  }
  // Guard the last ulp so the budget holds exactly.
  double l1 = w.lpNorm<1>();
  if (l1 > gamma) w *= gamma / l1;
  return w;
}

Estimator fit_lasso(const Dataset& d, double gamma, const LassoOptions& opt) { return fit_lasso(d.X, d.y, gamma, opt); }

// Accelerated projected gradient on f(c) = |Xc - y|^2 / T over the l1 ball.
// With X = QR the objective is (|Rc - q|^2 + r0) / T, which keeps it accurate
// near the optimum; momentum restarts whenever the objective would increase.
Estimator fit_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double gamma, const LassoOptions& opt) {
  const Eigen::Index T = X.rows(), N = X.cols();
  if (T < 1) throw std::invalid_argument("fit_lasso: empty dataset");
  if (!(gamma > 0)) throw std::invalid_argument("fit_lasso: gamma must be > 0");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  const Eigen::Index r = std::min(T, N);
  Eigen::MatrixXd R = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  Eigen::VectorXd qty = qr.householderQ().transpose() * y;
  Eigen::VectorXd q = qty.head(r);
  const double r0 = T > r ? qty.tail(T - r).squaredNorm() : 0.0;
  const double invT = 1.0 / static_cast<double>(T);

  auto obj = [&](const Eigen::VectorXd& Rc) { return ((Rc - q).squaredNorm() + r0) * invT; };
  auto grad = [&](const Eigen::VectorXd& Rc) -> Eigen::VectorXd { return 2.0 * invT * (R.transpose() * (Rc - q)); };

  Eigen::MatrixXd G = R.transpose() * R;
  double lmax = N > 0 ? Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(G, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff() : 0;
  double L = std::max(2.0 * invT * lmax, 1e-300);
  const double Lcap = 1e6 * L;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(N), xprev = x;
  Eigen::VectorXd Rx = Eigen::VectorXd::Zero(r), Rxprev = Rx;
  double fx = obj(Rx);
  double t = 1.0;
  Estimator e;
  e.gamma = gamma;
  e.report.solver = "fista-l1ball";
  e.report.converged = false;
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    double tn = 0.5 * (1 + std::sqrt(1 + 4 * t * t));
    double beta = (t - 1) / tn;
    Eigen::VectorXd yv = x + beta * (x - xprev);
    Eigen::VectorXd Ry = Rx + beta * (Rx - Rxprev);
    double fy = obj(Ry);
    Eigen::VectorXd gy = grad(Ry);
    Eigen::VectorXd z, Rz;
    double fz;
    for (;;) {
      z = project_l1_ball(yv - gy / L, gamma);
      Rz = R.triangularView<Eigen::Upper>() * z;
      fz = obj(Rz);
      Eigen::VectorXd dz = z - yv;
      double model = fy + gy.dot(dz) + 0.5 * L * dz.squaredNorm();
      // Rounding slack: Ry is extrapolated while Rz is computed directly.
      if (fz <= model + 1e-13 * (std::abs(fy) + r0 * invT) || L > Lcap) break;
      L *= 2;
    }
    if (fz > fx) {
      // Restart: drop momentum and retry from x with a plain gradient step.
      t = 1.0;
      xprev = x;
      Rxprev = Rx;
      continue;
    }
    double rel = (fx - fz) / std::max(std::abs(fx), 1e-300);
    xprev = x;
    Rxprev = Rx;
    x = z;
    Rx = Rz;
    fx = fz;
    t = tn;
    if (rel < opt.rel_tol) {
      e.report.converged = true;
      ++it;
      break;
    }
  }
  e.coeffs = x;
  e.report.iterations = it;
  e.report.objective = fx;
  Eigen::VectorXd gx = grad(Rx);
  e.report.stationarity = L * (x - project_l1_ball(x - gx / L, gamma)).norm();
  return e;
}

double predict(const Estimator& e, const Eigen::VectorXd& x) {
  if (x.size() != e.coeffs.size()) throw std::invalid_argument("predict: dimension mismatch");
  return e.coeffs.dot(x);
}

Eigen::VectorXd squared_errors(const Eigen::VectorXd& c, const Dataset& d) {
  if (c.size() != d.cols()) throw std::invalid_argument("squared_errors: dimension mismatch");
  return (d.X * c - d.y).array().square().matrix();
}

double evaluate_mse(const Estimator& e, const Dataset& d) {
  if (d.rows() == 0) return 0.0;
  return squared_errors(e.coeffs, d).mean();
}

double unmitigated_mse(const Dataset& d, int identity_column) {
  if (identity_column < 0 || identity_column >= d.cols())
    throw std::invalid_argument("unmitigated_mse: no identity column");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(d.cols());
  c[identity_column] = 1;
  return d.rows() ? squared_errors(c, d).mean() : 0.0;
}

Moments moments(const Dataset& d) {
  if (d.rows() < 1) throw std::invalid_argument("moments: empty dataset");
  const double invT = 1.0 / d.rows();
  Moments m;
  m.A = invT * d.X.transpose() * d.X;
  m.b = invT * d.X.transpose() * d.y;
  m.Y = invT * d.y.squaredNorm();
  m.shot_diag = d.shot_var.size() ? Eigen::VectorXd(d.shot_var.colwise().mean().transpose())
                                  : Eigen::VectorXd::Zero(d.cols());
  return m;
}

namespace {
// ceil() that ignores rounding noise just above an integer.
int64_t ceil_tolerant(double v) {
  double r = std::round(v);
  if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return static_cast<int64_t>(r);
  return static_cast<int64_t>(std::ceil(v));
}
}  // namespace

int64_t plan_training_size(double N, double delta, double gamma, double normO, double eps) {
  if (!(N > 0 && delta > 0 && delta < 1 && gamma > 0 && normO > 0 && eps > 0))
    throw std::invalid_argument("plan_training_size: arguments must be positive and delta < 1");
  double k = 12 * gamma * gamma * normO * normO;
  return ceil_tolerant(std::log(6 * N * N / delta) * k * k / (eps * eps));
}

int64_t empirical_training_size(double N, double gamma, double eps) {
  if (!(N > 0 && gamma > 0 && eps > 0)) throw std::invalid_argument("empirical_training_size: arguments must be positive");
  return ceil_tolerant(2 * gamma * std::log(N) / std::sqrt(eps));
}

std::pair<double, double> chebyshev_envelope(double eps, double k) {
  if (!(eps >= 0) || !(k > 1)) throw std::invalid_argument("chebyshev_envelope: need eps >= 0 and k > 1");
  return {(k + 1) * std::sqrt(eps), 1 - 1 / (k * k)};
}

void write_dataset_csv(const std::string& path, const Dataset& d) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_dataset_csv: cannot open " + path);
  for (int j = 0; j < d.cols(); ++j) out << "x_" << j << ',';
  out << "y\n" << std::setprecision(17);
  for (int i = 0; i < d.rows(); ++i) {
    for (int j = 0; j < d.cols(); ++j) out << d.X(i, j) << ',';
    out << d.y(i) << '\n';
  }
}

nlohmann::json estimator_to_json(const Estimator& e) {
  std::vector<double> c(e.coeffs.data(), e.coeffs.data() + e.coeffs.size());
  nlohmann::json j;
  j["gamma"] = std::isinf(e.gamma) ? nlohmann::json(nullptr) : nlohmann::json(e.gamma);
  j["coeffs"] = c;
  j["l1_norm"] = e.l1_norm();
  j["report"] = {{"solver", e.report.solver},
                 {"iterations", e.report.iterations},
                 {"objective", e.report.objective},
                 {"stationarity", e.report.stationarity},
                 {"converged", e.report.converged}};
  return j;
}

}  // namespace nil
