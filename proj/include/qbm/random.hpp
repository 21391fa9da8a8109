// Copyright 2026 The qbm-gse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qbm {

using RandomStream = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based split: the stream for a given (seed, counters...) path is
/// independent of how many other streams were derived before it.
inline RandomStream derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t state = mix64(seed);
  for (std::uint64_t counter : path) state = mix64(state ^ mix64(counter + 0x632be59bd9b4e019ULL));
  return RandomStream(state);
}

/// Uniform on [0, 1) with 53 random bits; bit-stable across standard libraries.
inline double uniform01(RandomStream& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(RandomStream& rng, double p) { return uniform01(rng) < p; }

}  // namespace qbm
