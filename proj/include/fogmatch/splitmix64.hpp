/*
 * Copyright 2026 The fogmatch Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FOGMATCH_SPLITMIX64_HPP
#define FOGMATCH_SPLITMIX64_HPP

#include <cstdint>

namespace fogmatch {

/// SplitMix64 (Steele, Lea & Flood; Vigna's reference implementation).
/// Chosen because it is trivially portable: the sequence for a given seed is
/// bit-identical on every platform, so seeded experiments replay exactly.
/// Reference vectors, seed 0: e220a8397b1dcdaf, 6e789e6aa1b965f4, ...
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the 53 high bits.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). Uses the unit double so results stay
  /// platform-independent; the bias for small n is far below 2^-50.
  int next_below(int n) {
    const int value = static_cast<int>(next_unit() * n);
    return value >= n ? n - 1 : value;
  }

  /// One application of the output mix to an arbitrary word. Used to derive
  /// independent substream seeds from (seed, index) pairs.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

private:
  std::uint64_t state_;
};

} // namespace fogmatch

#endif // FOGMATCH_SPLITMIX64_HPP
