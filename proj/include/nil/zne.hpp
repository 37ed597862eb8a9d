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

#include "nil/features.hpp"

namespace nil {

struct ZnePoint {
  double alpha;
  double value;
};

struct ZneResult {
  double value = 0.0;
  bool fallback = false;  // exponential fit rejected; linear intercept used
  double residual = 0.0;
};

// Least-squares line through the points, evaluated at alpha = 0.
ZneResult extrapolate_linear(const std::vector<ZnePoint>& pts);

// v(alpha) = a * exp(-b alpha) fitted in log space on |v|. Falls back to the
// linear intercept on a sign change, |v| < 1e-12, a worse residual than the
// line, |a| > 1.05 * bound, or fewer than three points.
ZneResult extrapolate_exponential(const std::vector<ZnePoint>& pts, double bound);

// Noisy values at each noise scale, then exponential-with-fallback.
ZneResult zne_mitigate(const Circuit& c, const NoiseModel& model, const Observable& obs, const FeatureMode& mode,
                       const std::vector<double>& alphas, uint64_t seed);

// Same extrapolation applied to an already-collected zne_map feature row.
ZneResult zne_from_features(const std::vector<double>& alphas, const double* values, double bound);

}  // namespace nil
