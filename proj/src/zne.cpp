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

#include "nil/zne.hpp"

#include <cmath>
#include <stdexcept>

namespace nil {

namespace {

struct Line {
  double intercept, slope, rss;
};

Line fit_line(const std::vector<double>& a, const std::vector<double>& v) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mv = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mv += v[i];
  }
  ma /= n;
  mv /= n;
  double saa = 0, sav = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    saa += (a[i] - ma) * (a[i] - ma);
    sav += (a[i] - ma) * (v[i] - mv);
  }
  Line l;
  l.slope = saa > 0 ? sav / saa : 0.0;
  l.intercept = mv - l.slope * ma;
  l.rss = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double r = v[i] - (l.intercept + l.slope * a[i]);
    l.rss += r * r;
  }
  return l;
}

void check_points(const std::vector<ZnePoint>& pts) {
  if (pts.size() < 2) throw std::invalid_argument("zne: need at least two points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!std::isfinite(pts[i].alpha) || !std::isfinite(pts[i].value) || pts[i].alpha < 0)
      throw std::invalid_argument("zne: non-finite or negative point");
    if (i && !(pts[i].alpha > pts[i - 1].alpha)) throw std::invalid_argument("zne: alphas must be strictly increasing");
  }
}

}  // namespace

ZneResult extrapolate_linear(const std::vector<ZnePoint>& pts) {
  check_points(pts);
  std::vector<double> a, v;
  for (const auto& p : pts) {
    a.push_back(p.alpha);
    v.push_back(p.value);
  }
  Line l = fit_line(a, v);
  return {l.intercept, false, l.rss};
}

ZneResult extrapolate_exponential(const std::vector<ZnePoint>& pts, double bound) {
  ZneResult lin = extrapolate_linear(pts);
  lin.fallback = true;
  if (pts.size() < 3) return lin;
  double sign = pts[0].value < 0 ? -1.0 : 1.0;
  std::vector<double> a, lv;
  for (const auto& p : pts) {
    if (std::abs(p.value) < 1e-12 || (p.value < 0 ? -1.0 : 1.0) != sign) return lin;
    a.push_back(p.alpha);
    lv.push_back(std::log(std::abs(p.value)));
  }
  Line l = fit_line(a, lv);
  double amp = sign * std::exp(l.intercept);
  double rss = 0;
  for (const auto& p : pts) {
    double r = p.value - amp * std::exp(l.slope * p.alpha);
    rss += r * r;
  }
  // Compare with a little slack so exact data on both models keeps the exponential.
  if (rss > lin.residual + 1e-15 * (1 + std::abs(amp)) || std::abs(amp) > 1.05 * bound || !std::isfinite(amp))
    return lin;
  return {amp, false, rss};
}

ZneResult zne_from_features(const std::vector<double>& alphas, const double* values, double bound) {
  std::vector<ZnePoint> pts;
  for (std::size_t i = 0; i < alphas.size(); ++i) pts.push_back({alphas[i], values[i]});
  return extrapolate_exponential(pts, bound);
}

ZneResult zne_mitigate(const Circuit& c, const NoiseModel& model, const Observable& obs, const FeatureMode& mode,
                       const std::vector<double>& alphas, uint64_t seed) {
  FeatureRow row = estimate_features(c, zne_map(alphas), model, obs, mode, seed);
  return zne_from_features(alphas, row.x.data(), obs.l1_norm());
}

}  // namespace nil
