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

#include "nil/harness.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nil {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string resolve(const std::string& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? p : (fs::path(base) / path).string();
}

Observable observable_from_json(const json& j, const Circuit& c, const std::optional<AnsatzSpec>& ansatz,
                                const std::string& base) {
  std::string type = j.value("type", "tfi");
  if (j.contains("file")) return Observable::parse(read_file(resolve(base, j["file"].get<std::string>())));
  if (j.contains("terms")) return Observable::parse(j["terms"].get<std::string>());
  if (type != "tfi") throw std::invalid_argument("observable: unknown type " + type);
  LatticeGraph g = ansatz ? ansatz->graph() : LatticeGraph::line(c.n_qubits);
  if (j.contains("grid")) g = LatticeGraph::grid(j["grid"].at(0).get<int>(), j["grid"].at(1).get<int>());
  return build_tfi(g, j.value("J", 1.0), j.value("h", 2.0));
}

Circuit with_angles(const Circuit& tmpl, const std::vector<double>& angles) {
  Circuit c = tmpl;
  std::size_t k = 0;
  for (auto& g : c.gates)
    if (g.param && g.is_rotation()) g.angle = angles.at(k++);
  return c;
}

double mse_stderr(const Eigen::VectorXd& se) {
  if (se.size() < 2) return 0.0;
  double m = se.mean();
  return std::sqrt((se.array() - m).square().sum() / (se.size() - 1) / se.size());
}

json mse_block(const Eigen::VectorXd& c, const Dataset& d) {
  if (d.rows() == 0) return nullptr;
  Eigen::VectorXd se = squared_errors(c, d);
  return {{"mse", se.mean()}, {"stderr", mse_stderr(se)}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json base_report(const ExperimentConfig& cfg, const std::string& command) {
  return {{"command", command},
          {"config", cfg.raw},
          {"config_hash", git_blob_sha1(cfg.text)},
          {"circuit", cfg.circuit_label},
          {"n_qubits", cfg.circuit.n_qubits}};
}

FeatureMode feature_mode(const ExperimentConfig& cfg) {
  return cfg.shots ? FeatureMode::sampled(*cfg.shots, cfg.record_shot_variance) : FeatureMode::exact_mode();
}

struct Collected {
  Dataset train, test;
};

Dataset collect(const ExperimentConfig& cfg, const std::string& generator, int T, uint64_t circ_seed,
                uint64_t shot_seed, const NeighborMap& map) {
  auto circuits = generate_circuits(cfg.circuit, generator, T, circ_seed, cfg.threads);
  Dataset d = collect_dataset(circuits, map, cfg.noise, cfg.observable, feature_mode(cfg), shot_seed, cfg.threads);
  d.meta["generator"] = generator;
  d.meta["circuit_seed"] = circ_seed;
  return d;
}

uint64_t train_circuit_seed(const ExperimentConfig& c) { return derive_seed(c.seed_circuits, {kTagTrain}); }
uint64_t test_circuit_seed(const ExperimentConfig& c) { return derive_seed(c.seed_circuits, {kTagTest}); }
uint64_t train_shot_seed(const ExperimentConfig& c) { return derive_seed(c.seed_shots, {kTagTrain}); }
uint64_t test_shot_seed(const ExperimentConfig& c) { return derive_seed(c.seed_shots, {kTagTest}); }

void maybe_write(const ExperimentConfig& cfg, const std::string& name, const std::string& text) {
  if (cfg.out.empty()) return;
  fs::create_directories(cfg.out);
  write_text((fs::path(cfg.out) / name).string(), text);
}

void maybe_write_dataset(const ExperimentConfig& cfg, const std::string& name, const Dataset& d) {
  if (cfg.out.empty() || !cfg.write_datasets) return;
  fs::create_directories(cfg.out);
  write_dataset_csv((fs::path(cfg.out) / name).string(), d);
}

}  // namespace

ExperimentConfig config_from_json(const json& j, const std::string& base_dir) {
  ExperimentConfig cfg;
  cfg.raw = j;
  cfg.text = j.dump();
  std::optional<AnsatzSpec> ansatz;
  if (j.contains("circuit_file")) {
    cfg.circuit = circuit_from_json(json::parse(read_file(resolve(base_dir, j["circuit_file"].get<std::string>()))));
    cfg.circuit_label = j["circuit_file"].get<std::string>();
  } else if (j.contains("ansatz")) {
    ansatz = ansatz_from_json(j["ansatz"]);
    cfg.circuit = build_ansatz(*ansatz);
    cfg.circuit_label = ansatz->label();
  } else {
    throw std::invalid_argument("config: need \"ansatz\" or \"circuit_file\"");
  }
  cfg.observable = observable_from_json(j.value("observable", json::object()), cfg.circuit, ansatz, base_dir);
  if (cfg.observable.n_qubits() != cfg.circuit.n_qubits)
    throw std::invalid_argument("config: observable width does not match the circuit");
  if (j.contains("noise")) cfg.noise = noise_from_json(j["noise"]);
  cfg.noise.validate();
  if (j.contains("neighbors")) cfg.neighbors = j["neighbors"];
  if (j.contains("generator")) {
    const auto& g = j["generator"];
    cfg.generators = g.is_array() ? g.get<std::vector<std::string>>() : std::vector<std::string>{g.get<std::string>()};
    if (cfg.generators.empty()) throw std::invalid_argument("config: empty generator list");
  }
  cfg.test_generator = j.value("test_generator", cfg.test_generator);
  cfg.T_train = j.value("T_train", cfg.T_train);
  cfg.T_test = j.value("T_test", cfg.T_test);
  if (cfg.T_train < 1 || cfg.T_test < 0) throw std::invalid_argument("config: need T_train >= 1 and T_test >= 0");
  if (j.contains("shots") && !j["shots"].is_null()) {
    cfg.shots = j["shots"].get<int64_t>();
    if (*cfg.shots < 1) throw std::invalid_argument("config: shots must be >= 1");
  }
  cfg.record_shot_variance = j.value("record_shot_variance", false);
  if (j.contains("solver")) {
    cfg.solver = j["solver"].value("kind", cfg.solver);
    if (j["solver"].contains("gamma") && !j["solver"]["gamma"].is_null()) cfg.gamma = j["solver"]["gamma"].get<double>();
  }
  if (cfg.solver != "lasso" && cfg.solver != "ols") throw std::invalid_argument("config: solver must be ols or lasso");
  if (j.contains("seeds")) {
    const auto& s = j["seeds"];
    cfg.seed_circuits = s.value("circuits", cfg.seed_circuits);
    cfg.seed_shots = s.value("shots", cfg.seed_shots);
    cfg.seed_subset = s.value("subset", cfg.seed_subset);
  }
  cfg.out = j.value("out", std::string());
  cfg.threads = j.value("threads", 0);
  cfg.write_datasets = j.value("write_datasets", false);
  if (j.contains("curve")) cfg.curve_grid = j["curve"].value("grid", std::vector<int>{});
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::string text = read_file(path);
  ExperimentConfig cfg = config_from_json(json::parse(text), fs::path(path).parent_path().string().empty()
                                                                 ? "."
                                                                 : fs::path(path).parent_path().string());
  cfg.text = text;
  return cfg;
}

void override_seed(ExperimentConfig& cfg, uint64_t k) {
  cfg.seed_circuits = derive_seed(k, {0});
  cfg.seed_shots = derive_seed(k, {1});
  cfg.seed_subset = derive_seed(k, {2});
  cfg.raw["seeds"] = {{"circuits", cfg.seed_circuits}, {"shots", cfg.seed_shots}, {"subset", cfg.seed_subset}};
  cfg.text += "\nseed=" + std::to_string(k);
}

std::vector<Circuit> generate_circuits(const Circuit& tmpl, const std::string& generator, int T, uint64_t seed,
                                       int threads) {
  int L = -1;
  std::string g = generator;
  if (g.rfind("mixed", 0) == 0) {
    auto open = g.find_first_of("(:");
    if (open == std::string::npos) throw std::invalid_argument("generator: mixed needs a layer count, e.g. mixed(1)");
    L = std::stoi(g.substr(open + 1));
    g = "mixed";
  }
  if (g != "2design" && g != "allClifford" && g != "mixed" && g != "uniform" && g != "haar")
    throw std::invalid_argument("generator: unknown kind " + generator);
  std::vector<Circuit> out(std::max(T, 0));
  parallel_for(T, threads, [&](int i) {
    Rng rng = make_rng(seed, {uint64_t(i)});
    if (g == "2design") out[i] = gen_training_2design(tmpl, rng);
    else if (g == "allClifford") out[i] = gen_training_all_clifford(tmpl, rng);
    else if (g == "mixed") out[i] = gen_training_mixed(tmpl, L, rng);
    else if (g == "uniform") out[i] = bind_uniform(tmpl, rng);
    else out[i] = haar_single_qubit_test_circuit(tmpl, rng);
  });
  return out;
}

std::vector<int> ColumnOrder::take(int s) const {
  if (s < 0 || s > static_cast<int>(shuffled.size())) throw std::invalid_argument("subset size out of range");
  std::vector<int> cols = fixed;
  cols.insert(cols.end(), shuffled.begin(), shuffled.begin() + s);
  std::sort(cols.begin(), cols.end());
  return cols;
}

ColumnOrder nested_column_order(const NeighborMap& m, uint64_t seed) {
  ColumnOrder o;
  for (int j = 0; j < static_cast<int>(m.size()); ++j) {
    auto k = m.specs[j].kind;
    bool fixed = k == NeighborSpec::Kind::Identity || k == NeighborSpec::Kind::NoiseScale;
    (fixed ? o.fixed : o.shuffled).push_back(j);
  }
  Rng rng = make_rng(seed, {kTagSubset});
  std::shuffle(o.shuffled.begin(), o.shuffled.end(), rng);
  return o;
}

NeighborMap build_neighbor_map(const ExperimentConfig& cfg, const Circuit& c) {
  const json& j = cfg.neighbors;
  std::string kind = j.value("kind", "pauli-w1");
  std::vector<double> alphas = j.value("alphas", default_zne_alphas());
  NeighborMap m;
  if (kind == "pauli-w1") {
    m = weight1_pauli_map(c);
  } else if (kind == "pauli-wk") {
    Rng rng = make_rng(cfg.seed_subset, {kTagSubset, 1});
    m = weightk_pauli_map(c, j.value("max_weight", 2), j.value("budget", 0), rng);
  } else if (kind == "cptp") {
    m = cptp_map(c);
  } else if (kind == "zne") {
    m = zne_map(alphas);
  } else if (kind == "zne+pauli") {
    m = zne_plus_pauli_map(c, alphas);
  } else {
    throw std::invalid_argument("neighbors: unknown kind " + kind);
  }
  if (j.contains("subset") && !j["subset"].is_null()) {
    int s = j["subset"].get<int>();
    ColumnOrder o = nested_column_order(m, cfg.seed_subset);
    NeighborMap sub = select_columns(m, o.take(s));
    sub.kind = "subset";
    sub.params = {{"from", m.kind}, {"s", s}, {"full_size", m.size()}};
    return sub;
  }
  return m;
}

double default_gamma(const NeighborMap& m) { return m.has_noise_scale() ? 5.0 : 2.0; }

Estimator fit_estimator(const ExperimentConfig& cfg, const NeighborMap& m, const Dataset& train) {
  if (cfg.solver == "ols") return fit_ols(train);
  return fit_lasso(train, cfg.gamma.value_or(default_gamma(m)));
}

std::string git_blob_sha1(const std::string& content) {
  std::string header = "blob " + std::to_string(content.size());
  header.push_back('\0');
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("sha1: context allocation failed");
  bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) && EVP_DigestUpdate(ctx, header.data(), header.size()) &&
            EVP_DigestUpdate(ctx, content.data(), content.size()) && EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  if (!ok) throw std::runtime_error("sha1: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

Circuit random_clifford_circuit(int n, int depth, Rng& rng) {
  Circuit c;
  c.n_qubits = n;
  std::uniform_int_distribution<int> pick_c(0, 23);
  std::vector<int> order(n);
  for (int d = 0; d < depth; ++d) {
    for (int q = 0; q < n; ++q) c.add(Gate::clifford1(pick_c(rng), q, 2 * d + 1));
    if (n < 2) continue;
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int k = 0; k + 1 < n; k += 2) {
      if (rng() & 1) c.add(Gate::cz(order[k], order[k + 1], 2 * d + 2));
      else c.add(Gate::cnot(order[k], order[k + 1], 2 * d + 2));
    }
  }
  return c;
}

// --- verify ----------------------------------------------------------------

namespace {

json check(const std::string& name, double residual, double tol, bool pass, json extra = json::object()) {
  extra["name"] = name;
  extra["residual"] = residual;
  extra["tolerance"] = tol;
  extra["pass"] = pass;
  return extra;
}

// Exhaustive 2-design moments vs 64x64 uniform-angle quadrature on a small
// noisy circuit with a weight-1 map.
double moment_equality_residual(const NoiseModel& noise) {
  Circuit t;
  t.n_qubits = 2;
  t.add(Gate::clifford1(clifford1_index("H"), 0, 1));
  t.add(Gate::rotation('Y', 0, 0.0, true, 2));
  t.add(Gate::cnot(0, 1, 3));
  t.add(Gate::rotation('X', 1, 0.0, true, 4));
  Observable obs = Observable::parse("0.7 ZZ\n0.5 XI\n-0.3 IZ\n0.2 YY");
  NeighborMap map = weight1_pauli_map(t);
  const int N = static_cast<int>(map.size());
  auto accumulate = [&](const std::vector<double>& angles, double w, Eigen::MatrixXd& A, Eigen::VectorXd& b,
                        double& Y) {
    Circuit c = with_angles(t, angles);
    FeatureRow r = estimate_features(c, map, noise, obs, FeatureMode::exact_mode(), 0);
    Eigen::Map<Eigen::VectorXd> x(r.x.data(), N);
    double y = ideal_label(c, obs);
    A += w * x * x.transpose();
    b += w * y * x;
    Y += w * y * y;
  };
  Eigen::MatrixXd A1 = Eigen::MatrixXd::Zero(N, N), A2 = A1;
  Eigen::VectorXd b1 = Eigen::VectorXd::Zero(N), b2 = b1;
  double Y1 = 0, Y2 = 0;
  const double q = std::numbers::pi / 2;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) accumulate({i * q, k * q}, 1.0 / 16, A1, b1, Y1);
  const int M = 64;
  for (int i = 0; i < M; ++i)
    for (int k = 0; k < M; ++k)
      accumulate({2 * std::numbers::pi * i / M, 2 * std::numbers::pi * k / M}, 1.0 / (M * M), A2, b2, Y2);
  return std::max({(A1 - A2).cwiseAbs().maxCoeff(), (b1 - b2).cwiseAbs().maxCoeff(), std::abs(Y1 - Y2)});
}

double sign_lemma_residual(const NoiseModel& noise, int circuits, uint64_t seed) {
  double worst = 0;
  for (int i = 0; i < circuits; ++i) {
    Rng rng = make_rng(seed, {uint64_t(i)});
    int n = 2 + static_cast<int>(rng() % 3);
    Circuit c = random_clifford_circuit(n, 3, rng);
    Observable obs(n);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int k = 0; k < 3; ++k) {
      PauliString p(n);
      for (int q = 0; q < n; ++q) {
        int code = pick(rng);
        p.set(q, code == 1 || code == 3, code == 2 || code == 3);
      }
      if (!p.is_identity()) obs.add(0.5 + 0.25 * k, p);
    }
    if (obs.size() == 0) obs.add(1.0, PauliString::single(n, 0, 'Z'));
    NeighborMap map = weight1_pauli_map(c);
    FeatureRow r = estimate_features(c, map, noise, obs, FeatureMode::exact_mode(), 0);
    NoisyCircuit nc = attach_noise(c, noise);
    for (std::size_t j = 0; j < map.size(); ++j)
      worst = std::max(worst, std::abs(r.x[j] - noisy_expectation(apply(map.specs[j], nc), obs)));
  }
  return worst;
}

// Single-qubit X then depolarizing p, measured in Z with Ns shots per
// repetition: the spread of the estimates must be Var/Ns.
json shot_regularization_check(double p, int64_t Ns, int reps, uint64_t seed) {
  Circuit c;
  c.n_qubits = 1;
  c.add(Gate::clifford1(clifford1_index("X"), 0, 1));
  NoiseModel m;
  m.p1 = p;
  m.p2 = 0;
  Observable obs = Observable::parse("1 Z");
  NeighborMap map;
  map.kind = "identity";
  map.specs = {NeighborSpec::identity()};
  double s1 = 0, s2 = 0;
  for (int r = 0; r < reps; ++r) {
    FeatureRow row = estimate_features(c, map, m, obs, FeatureMode::sampled(Ns), derive_seed(seed, {uint64_t(r)}));
    s1 += row.x[0];
    s2 += row.x[0] * row.x[0];
  }
  double mean = s1 / reps;
  double offset = s2 / reps - mean * mean;  // diag(E[x x^T]) - E[x]^2
  double lam = 1 - 4 * p / 3;
  double expect = (1 - lam * lam) / static_cast<double>(Ns);
  double sigma = expect * std::sqrt(2.0 / (reps - 1));
  double z = std::abs(offset - expect) / sigma;
  return check("shot_regularization_Ns" + std::to_string(Ns), z, 3.0, z <= 3.0,
               {{"offset", offset}, {"expected", expect}, {"sigma", sigma}});
}

}  // namespace

json cmd_verify(const ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  json v = cfg.raw.value("verify", json::object());
  bool corrupt = v.value("corrupt_angles", false);
  int axes = v.value("axes", 20);
  uint64_t seed = cfg.seed_circuits;
  json checks = json::array();

  std::optional<std::vector<double>> set;
  if (corrupt) set = std::vector<double>{0.0, std::numbers::pi};
  double worst = 0;
  Rng rng = make_rng(seed, {kTagAxes});
  std::normal_distribution<double> nd;
  for (int i = 0; i < axes; ++i) {
    std::array<double, 3> a{nd(rng), nd(rng), nd(rng)};
    double nrm = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    for (auto& e : a) e /= nrm;
    for (int t = 1; t <= 2; ++t) worst = std::max(worst, check_rotation_2design(a, t, set));
  }
  checks.push_back(check("rotation_2design", worst, 1e-12, worst < 1e-12, {{"corrupted", corrupt}}));
  double control = check_rotation_2design({0, 0, 1}, 2, std::vector<double>{0.0, std::numbers::pi});
  checks.push_back(check("rotation_2design_negative_control", control, 1e-2, control > 1e-2));

  double me = moment_equality_residual(cfg.noise);
  checks.push_back(check("moment_equality", me, 1e-10, me < 1e-10));

  double sl = sign_lemma_residual(cfg.noise, v.value("sign_circuits", 30), derive_seed(seed, {kTagTest}));
  checks.push_back(check("pauli_insertion_sign", sl, 1e-10, sl < 1e-10));

  for (int64_t Ns : v.value("shot_sizes", std::vector<int64_t>{100, 1000}))
    checks.push_back(shot_regularization_check(0.1, Ns, v.value("shot_reps", 2000), derive_seed(cfg.seed_shots, {uint64_t(Ns)})));

  bool pass = std::all_of(checks.begin(), checks.end(), [](const json& c) { return c["pass"].get<bool>(); });
  json r = base_report(cfg, "verify");
  r["checks"] = checks;
  r["pass"] = pass;
  r["wall_clock_s"] = seconds_since(t0);
  maybe_write(cfg, "verify.json", r.dump(2));
  return r;
}

// --- run -------------------------------------------------------------------

json cmd_run(const ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  NeighborMap map = build_neighbor_map(cfg, cfg.circuit);
  const int idc = map.identity_column();
  json r = base_report(cfg, "run");
  r["neighbors"] = {{"kind", map.kind}, {"N", map.size()}, {"identity_column", idc}};
  r["features"] = cfg.shots ? json{{"mode", "sampled"}, {"shots", *cfg.shots}} : json{{"mode", "exact"}};

  Dataset test;
  if (cfg.T_test > 0) {
    test = collect(cfg, cfg.test_generator, cfg.T_test, test_circuit_seed(cfg), test_shot_seed(cfg), map);
    maybe_write_dataset(cfg, "test.csv", test);
  }
  json per = json::array();
  double first_test = std::nan("");
  for (const auto& gen : cfg.generators) {
    auto tg = std::chrono::steady_clock::now();
    Dataset train = collect(cfg, gen, cfg.T_train, train_circuit_seed(cfg), train_shot_seed(cfg), map);
    maybe_write_dataset(cfg, "train_" + gen + ".csv", train);
    Estimator est = fit_estimator(cfg, map, train);
    json g = {{"generator", gen},
              {"train", mse_block(est.coeffs, train)},
              {"l1_norm", est.l1_norm()},
              {"gamma", std::isinf(est.gamma) ? json(nullptr) : json(est.gamma)},
              {"solver", estimator_to_json(est)["report"]}};
    if (idc >= 0) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(map.size());
      e[idc] = 1;
      g["unmitigated_train"] = mse_block(e, train);
      if (test.rows()) g["unmitigated_test"] = mse_block(e, test);
    }
    if (test.rows()) {
      g["test"] = mse_block(est.coeffs, test);
      double tm = g["test"]["mse"].get<double>();
      if (std::isnan(first_test)) first_test = tm;
      g["test_mse_ratio_vs_first"] = first_test > 0 ? json(tm / first_test) : json("NA");
    }
    g["wall_clock_s"] = seconds_since(tg);
    maybe_write(cfg, "estimator_" + gen + ".json", estimator_to_json(est).dump(2));
    per.push_back(g);
  }
  r["results"] = per;
  r["wall_clock_s"] = seconds_since(t0);
  maybe_write(cfg, "report.json", r.dump(2));
  return r;
}

// --- curve -----------------------------------------------------------------

json cmd_curve(const ExperimentConfig& cfg, std::string* csv) {
  auto t0 = std::chrono::steady_clock::now();
  NeighborMap map = build_neighbor_map(cfg, cfg.circuit);
  ColumnOrder order = nested_column_order(map, cfg.seed_subset);
  const int smax = static_cast<int>(order.shuffled.size());
  std::vector<int> grid = cfg.curve_grid;
  if (grid.empty()) grid = {0, (smax + 3) / 4, smax / 2, smax};
  for (int s : grid)
    if (s < 0 || s > smax) throw std::invalid_argument("curve: grid value outside [0, " + std::to_string(smax) + "]");

  const std::string gen = cfg.generators.front();
  Dataset train = collect(cfg, gen, cfg.T_train, train_circuit_seed(cfg), train_shot_seed(cfg), map);
  Dataset test;
  if (cfg.T_test > 0) test = collect(cfg, cfg.test_generator, cfg.T_test, test_circuit_seed(cfg), test_shot_seed(cfg), map);

  std::ostringstream out;
  out << std::setprecision(10) << "s,train_mse,test_mse\n";
  json rows = json::array();
  for (int s : grid) {
    double tr, te = std::nan("");
    if (s == 0) {
      // No neighbors beyond the unmodified circuit: report its raw error.
      int idc = map.identity_column();
      if (idc < 0) throw std::invalid_argument("curve: s = 0 needs an identity column");
      tr = unmitigated_mse(train, idc);
      if (test.rows()) te = unmitigated_mse(test, idc);
    } else {
      auto cols = order.take(s);
      Dataset tr_s = select_columns(train, cols);
      Estimator est = fit_estimator(cfg, select_columns(map, cols), tr_s);
      tr = evaluate_mse(est, tr_s);
      if (test.rows()) te = evaluate_mse(est, select_columns(test, cols));
    }
    out << s << ',' << tr << ',';
    if (std::isnan(te)) out << "NA";
    else out << te;
    out << '\n';
    rows.push_back({{"s", s}, {"train_mse", tr}, {"test_mse", std::isnan(te) ? json("NA") : json(te)}});
  }
  if (csv) *csv = out.str();
  json r = base_report(cfg, "curve");
  r["generator"] = gen;
  r["N_max"] = smax;
  r["rows"] = rows;
  r["wall_clock_s"] = seconds_since(t0);
  maybe_write(cfg, "curve.csv", out.str());
  maybe_write(cfg, "curve.json", r.dump(2));
  return r;
}

// --- compare-zne -----------------------------------------------------------

json cmd_compare_zne(const ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  if (cfg.T_test < 1) throw std::invalid_argument("compare-zne: needs T_test >= 1");
  std::vector<double> alphas = cfg.neighbors.value("alphas", default_zne_alphas());
  const std::string gen = cfg.generators.front();
  const double bound = cfg.observable.l1_norm();
  json r = base_report(cfg, "compare-zne");

  NeighborMap zmap = zne_map(alphas);
  Dataset train = collect(cfg, gen, cfg.T_train, train_circuit_seed(cfg), train_shot_seed(cfg), zmap);
  Dataset test = collect(cfg, cfg.test_generator, cfg.T_test, test_circuit_seed(cfg), test_shot_seed(cfg), zmap);
  Estimator est = fit_estimator(cfg, zmap, train);
  Eigen::VectorXd se_zne(test.rows());
  int fallbacks = 0;
  for (int i = 0; i < test.rows(); ++i) {
    std::vector<double> row(test.cols());
    for (int j = 0; j < test.cols(); ++j) row[j] = test.X(i, j);
    ZneResult z = zne_from_features(alphas, row.data(), bound);
    fallbacks += z.fallback;
    se_zne[i] = (z.value - test.y(i)) * (z.value - test.y(i));
  }
  double mse_nil = evaluate_mse(est, test);
  double mse_zne = se_zne.mean();
  bool degenerate = mse_nil <= 0 || std::max(mse_nil, mse_zne) < 1e-20;
  r["alphas"] = alphas;
  r["nil"] = {{"test_mse", mse_nil}, {"train_mse", evaluate_mse(est, train)}, {"l1_norm", est.l1_norm()},
              {"gamma", est.gamma}};
  r["zne"] = {{"test_mse", mse_zne}, {"stderr", mse_stderr(se_zne)}, {"linear_fallbacks", fallbacks}};
  r["ratio_zne_over_nil"] = degenerate ? json("NA") : json(mse_zne / mse_nil);

  // Optional: ZNE+Pauli vs Pauli-only at the same number s of Pauli neighbors.
  json cmp = cfg.raw.value("compare", json::object());
  if (cmp.contains("pauli_subset")) {
    std::vector<int> sizes = cmp["pauli_subset"].is_array() ? cmp["pauli_subset"].get<std::vector<int>>()
                                                            : std::vector<int>{cmp["pauli_subset"].get<int>()};
    NeighborMap full = zne_plus_pauli_map(cfg.circuit, alphas);
    const int base = full.identity_column();
    if (base < 0) throw std::invalid_argument("compare-zne: alphas must include 1 for the Pauli-only comparison");
    ColumnOrder order = nested_column_order(full, cfg.seed_subset);
    Dataset ftrain = collect(cfg, gen, cfg.T_train, train_circuit_seed(cfg), train_shot_seed(cfg), full);
    Dataset ftest = collect(cfg, cfg.test_generator, cfg.T_test, test_circuit_seed(cfg), test_shot_seed(cfg), full);
    json rows = json::array();
    for (int s : sizes) {
      auto both = order.take(s);
      std::vector<int> pauli_only{base};
      pauli_only.insert(pauli_only.end(), order.shuffled.begin(), order.shuffled.begin() + s);
      std::sort(pauli_only.begin(), pauli_only.end());
      NeighborMap mb = select_columns(full, both), mp = select_columns(full, pauli_only);
      mp.specs[std::find(pauli_only.begin(), pauli_only.end(), base) - pauli_only.begin()] = NeighborSpec::identity();
      Estimator eb = fit_estimator(cfg, mb, select_columns(ftrain, both));
      Estimator ep = fit_estimator(cfg, mp, select_columns(ftrain, pauli_only));
      double tb = evaluate_mse(eb, select_columns(ftest, both));
      double tp = evaluate_mse(ep, select_columns(ftest, pauli_only));
      rows.push_back({{"s", s},
                      {"zne_plus_pauli_test_mse", tb},
                      {"pauli_test_mse", tp},
                      {"ratio_pauli_over_zne_plus_pauli", tb > 0 ? json(tp / tb) : json("NA")}});
    }
    r["pauli_subset"] = rows;
  }
  r["wall_clock_s"] = seconds_since(t0);
  maybe_write(cfg, "compare_zne.json", r.dump(2));
  return r;
}

json cmd_plan(const PlanArgs& a) {
  json r = {{"command", "plan"}, {"mode", a.mode}, {"N", a.N}, {"gamma", a.gamma}, {"eps", a.eps}};
  int64_t T;
  if (a.mode == "bound") {
    T = plan_training_size(a.N, a.delta, a.gamma, a.normO, a.eps);
    r["delta"] = a.delta;
    r["normO"] = a.normO;
  } else if (a.mode == "empirical") {
    T = empirical_training_size(a.N, a.gamma, a.eps);
  } else {
    throw std::invalid_argument("plan: mode must be bound or empirical");
  }
  r["T"] = T;
  if (a.shots > 0) {
    r["shots_per_circuit"] = a.shots;
    r["total_executions"] = static_cast<double>(T) * a.N * static_cast<double>(a.shots);
  }
  return r;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace nil
