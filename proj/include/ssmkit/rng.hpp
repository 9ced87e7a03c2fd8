// Copyright 2026 The ssmkit Authors
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

#ifndef SSMKIT__RNG_HPP_
#define SSMKIT__RNG_HPP_

#include <cstdint>

namespace ssm
{

/// Name of the base generator, recorded in batch metadata so downstream
/// consumers can reproduce draws independently of this implementation.
inline constexpr const char * kRngAlgorithm = "splitmix64";

/// The 64-bit finalizer used by splitmix64.
inline constexpr std::uint64_t mix64(std::uint64_t z)
{
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// splitmix64: a tiny counter-based generator with a documented, fixed
/// output sequence for a given seed. Used for all uniform draws so batches
/// are reproducible bit-for-bit from (seed, index) alone.
class SplitMix64
{
public:
  explicit constexpr SplitMix64(const std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next()
  {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  /// Unbiased-enough index draw in [0, n) via the multiply-shift reduction.
  std::uint64_t next_index(const std::uint64_t n)
  {
    return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next()) * static_cast<unsigned __int128>(n)) >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

/// Derives an independent substream seed for one trajectory. Trajectory i
/// always sees the same draws regardless of how many trajectories are
/// generated or in which order, which keeps parallel batch generation
/// deterministic.
inline constexpr std::uint64_t substream_seed(
  const std::uint64_t seed, const std::uint64_t index)
{
  return mix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

}  // namespace ssm

#endif  // SSMKIT__RNG_HPP_
