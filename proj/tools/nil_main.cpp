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

// nil verify|run|curve|compare-zne|plan --config <file> [--seed k] [--out dir]

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "nil/harness.hpp"

namespace {

nil::ExperimentConfig load(const std::string& path, const std::optional<uint64_t>& seed,
                           const std::optional<std::string>& out) {
  nil::ExperimentConfig cfg = path.empty() ? nil::config_from_json({{"ansatz", {{"family", "vqe"}, {"n", 2}, {"m", 1}}}})
                                           : nil::load_config(path);
  if (seed) nil::override_seed(cfg, *seed);
  if (out) cfg.out = *out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neighbor-informed learning for quantum error mitigation"};
  app.require_subcommand(1);

  std::string config;
  std::optional<uint64_t> seed;
  std::optional<std::string> out;
  auto common = [&](CLI::App* sub, bool need_config) {
    auto* o = sub->add_option("--config", config, "experiment config (JSON)");
    if (need_config) o->required()->check(CLI::ExistingFile);
    else o->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "derive all seed streams from this value");
    sub->add_option("--out", out, "output directory for reports");
  };

  auto* verify = app.add_subcommand("verify", "run the theory checks; exit 1 on any failure");
  common(verify, false);
  auto* run = app.add_subcommand("run", "train, fit and evaluate");
  common(run, true);
  auto* curve = app.add_subcommand("curve", "MSE versus number of neighbors (CSV)");
  common(curve, true);
  auto* zne = app.add_subcommand("compare-zne", "NIL with noise-scaled neighbors versus plain ZNE");
  common(zne, true);

  auto* plan = app.add_subcommand("plan", "training-set size planner");
  nil::PlanArgs pa;
  plan->add_option("--config", config, "JSON with a \"plan\" object")->check(CLI::ExistingFile);
  plan->add_option("--N", pa.N, "number of neighbors");
  plan->add_option("--delta", pa.delta, "failure probability (bound mode)");
  plan->add_option("--gamma", pa.gamma, "l1 budget");
  plan->add_option("--normO", pa.normO, "observable norm (bound mode)");
  plan->add_option("--eps", pa.eps, "target MSE");
  plan->add_option("--mode", pa.mode, "bound | empirical")->check(CLI::IsMember({"bound", "empirical"}));
  plan->add_option("--shots", pa.shots, "shots per circuit, for the execution count");

  CLI11_PARSE(app, argc, argv);

  try {
    nlohmann::json report;
    int code = 0;
    if (*verify) {
      report = nil::cmd_verify(load(config, seed, out));
      code = report["pass"].get<bool>() ? 0 : 1;
    } else if (*run) {
      report = nil::cmd_run(load(config, seed, out));
    } else if (*curve) {
      std::string csv;
      nil::cmd_curve(load(config, seed, out), &csv);
      std::cout << csv;
      return 0;
    } else if (*zne) {
      report = nil::cmd_compare_zne(load(config, seed, out));
    } else if (*plan) {
      if (!config.empty()) {
        std::ifstream in(config);
        auto j = nlohmann::json::parse(in).value("plan", nlohmann::json::object());
        pa.N = j.value("N", pa.N);
        pa.delta = j.value("delta", pa.delta);
        pa.gamma = j.value("gamma", pa.gamma);
        pa.normO = j.value("normO", pa.normO);
        pa.eps = j.value("eps", pa.eps);
        pa.mode = j.value("mode", pa.mode);
        pa.shots = j.value("shots", pa.shots);
      }
      report = nil::cmd_plan(pa);
    }
    std::cout << report.dump(2) << '\n';
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
