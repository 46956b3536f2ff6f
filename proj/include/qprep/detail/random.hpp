// Copyright 2026 The qprep Authors
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

// Internal helpers. Sampling must be bit-reproducible across platforms,
// so doubles are built from raw mt19937_64 words by hand instead of
// going through std::uniform_real_distribution, whose output is
// implementation-defined.

#pragma once

#include <bit>
#include <cstdint>
#include <random>

namespace qprep::detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/** Stable per-interval stream id from a base seed and the interval's
 *  exact endpoint bit patterns. */
inline std::uint64_t derive_seed(std::uint64_t seed, double lo, double hi) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ std::bit_cast<std::uint64_t>(lo));
  h = mix64(h ^ std::bit_cast<std::uint64_t>(hi));
  return h;
}

/** Uniform double in [0, 1) with 53 random bits. */
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace qprep::detail
