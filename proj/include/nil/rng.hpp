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
#include <functional>
#include <initializer_list>
#include <random>

namespace nil {

using Rng = std::mt19937_64;

uint64_t splitmix64(uint64_t x);

// Derives an independent stream seed from a root seed and a path of tags, so
// work items can be seeded without depending on scheduling order.
uint64_t derive_seed(uint64_t root, std::initializer_list<uint64_t> tags);

inline Rng make_rng(uint64_t root, std::initializer_list<uint64_t> tags) {
  return Rng(derive_seed(root, tags));
}

// Fixed tags for seed streams.
enum StreamTag : uint64_t {
  kTagTrain = 0x7472,
  kTagTest = 0x7465,
  kTagShots = 0x7368,
  kTagSubset = 0x7375,
  kTagAxes = 0x6178,
};

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware).
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace nil
