// Copyright 2026 The depp Authors
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

#ifndef DEPP_MONTECARLO_HPP
#define DEPP_MONTECARLO_HPP

#include <array>
#include <cstdint>
#include <utility>

#include "depp/protocols.hpp"

namespace depp {

/// Seed remapped in place of zero, which is a fixed point of xorshift.
inline constexpr std::uint64_t kZeroSeedReplacement = 0x9E3779B97F4A7C15ULL;

/// xorshift64* state. Never zero.
class RngState {
 public:
  explicit RngState(std::uint64_t seed) : value_(seed == 0 ? kZeroSeedReplacement : seed) {}

  std::uint64_t value() const { return value_; }

  friend bool operator==(const RngState&, const RngState&) = default;

 private:
  std::uint64_t value_;
};

/// One xorshift64* step: the advanced state and its 64-bit output.
std::pair<RngState, std::uint64_t> rng_next(RngState s);

/// Uniform double in [0,1) from the high 53 bits of an output word.
inline double to_unit_interval(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

/// Total rng_next calls made by this process; lets tests check that analytic
/// paths draw no random numbers.
std::uint64_t rng_call_count();

struct WilsonInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// 95% Wilson score interval for `count` successes in `shots` trials.
WilsonInterval wilson_interval(std::uint64_t count, std::uint64_t shots);

struct SampleReport {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  /// Indexed in all_patterns() order.
  std::array<std::uint64_t, 4> counts{};
  std::array<double, 4> frequencies{};
  std::array<double, 4> ci_halfwidth{};

  friend bool operator==(const SampleReport&, const SampleReport&) = default;
};

/// Draws `shots` outcomes from a four-pattern distribution. Throws
/// std::invalid_argument when shots == 0 or the probabilities do not sum
/// to 1 within 1e-9.
SampleReport sample_distribution(const std::array<double, 4>& probs, std::uint64_t shots,
                                 std::uint64_t seed);
SampleReport sample_patterns(const RunResult& rr, std::uint64_t shots, std::uint64_t seed);

/// Splits the shots over `shards` independent streams (shard i starts from the
/// master state advanced i+1 times) and merges the counts.
SampleReport sample_patterns_sharded(const RunResult& rr, std::uint64_t shots,
                                     std::uint64_t seed, unsigned shards);

}  // namespace depp

#endif  // DEPP_MONTECARLO_HPP
