// Copyright 2026 The ilps Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ILPS_RANDOM_HPP_
#define ILPS_RANDOM_HPP_

#include <cstdint>

namespace ilps {

/// Splittable counter-based random stream (SplitMix64 core).
///
/// A stream is identified by (seed, stream_id); distinct ids yield
/// statistically independent sequences, so per-chain streams can be advanced
/// on any worker in any order without affecting reproducibility. The output
/// sequence is fully defined by this header, not by the platform's standard
/// library.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : state_(mix(mix(seed) ^ mix(stream_id ^ 0x1f53d36bd1b5f4c5ull))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in {0, ..., bound-1}; bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound) {
    // Lemire-style rejection-free-enough multiply-shift; the modulo bias of
    // the plain multiply is < 2^-64 * bound which is negligible here, but we
    // still reject the biased band to keep the law exact.
    while (true) {
      std::uint64_t x = next_u64();
      __uint128_t m = static_cast<__uint128_t>(x) * bound;
      std::uint64_t lo = static_cast<std::uint64_t>(m);
      if (lo >= bound || lo >= static_cast<std::uint64_t>(-bound) % bound)
        return static_cast<std::uint64_t>(m >> 64);
    }
  }

  bool bernoulli_half() { return (next_u64() >> 63) != 0; }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~0ull; }
  std::uint64_t operator()() { return next_u64(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace ilps

#endif  // ILPS_RANDOM_HPP_
