// Copyright 2026 The qinstant Authors
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
#include <random>

namespace qinstant {

/// Random stream used throughout the library. Streams are always passed
/// explicitly; there is no global generator.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Counter-based derivation of independent streams from one root seed.
///
/// Stream `k` of root `r` is seeded with splitmix64(splitmix64(r) ^ splitmix64(k)).
/// The seed depends only on (root, k), so trials may be executed in any
/// order or on any worker and still reproduce the same numbers.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  return splitmix64(splitmix64(root) ^ splitmix64(stream));
}

inline Rng derive_stream(std::uint64_t root, std::uint64_t stream) {
  return Rng(derive_seed(root, stream));
}

}  // namespace qinstant
