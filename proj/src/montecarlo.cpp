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

#include "depp/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace depp {

namespace {

std::atomic<std::uint64_t> g_rng_calls{0};

constexpr double kZ95 = 1.959963984540054;

std::array<double, 4> run_probabilities(const RunResult& rr) {
  std::array<double, 4> p{};
  for (std::size_t i = 0; i < 4; ++i) p[i] = rr.patterns[i].probability;
  return p;
}

void check_distribution(const std::array<double, 4>& probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("sample: pattern probabilities must be finite and >= 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("sample: pattern probabilities must sum to 1");
  }
}

// Counts only; the caller fills in frequencies and intervals.
std::array<std::uint64_t, 4> draw(const std::array<double, 4>& probs, std::uint64_t shots,
                                  RngState state) {
  std::array<double, 4> cumulative{};
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    acc += probs[i];
    cumulative[i] = acc;
    if (probs[i] > 0.0) last_positive = i;
  }
  std::array<std::uint64_t, 4> counts{};
  for (std::uint64_t s = 0; s < shots; ++s) {
    auto [next, word] = rng_next(state);
    state = next;
    const double u = to_unit_interval(word);
    std::size_t k = last_positive;
    for (std::size_t i = 0; i < last_positive; ++i) {
      if (u < cumulative[i]) {
        k = i;
        break;
      }
    }
    ++counts[k];
  }
  return counts;
}

SampleReport finish(std::uint64_t shots, std::uint64_t seed,
                    const std::array<std::uint64_t, 4>& counts) {
  SampleReport report;
  report.shots = shots;
  report.seed = seed;
  report.counts = counts;
  for (std::size_t i = 0; i < 4; ++i) {
    report.frequencies[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
    const WilsonInterval w = wilson_interval(counts[i], shots);
    report.ci_halfwidth[i] = 0.5 * (w.upper - w.lower);
  }
  return report;
}

}  // namespace

std::pair<RngState, std::uint64_t> rng_next(RngState s) {
  g_rng_calls.fetch_add(1, std::memory_order_relaxed);
  std::uint64_t x = s.value();
  x ^= x >> 12;
  x ^= x << 25;
  x ^= x >> 27;
  return {RngState(x), x * 2685821657736338717ULL};
}

std::uint64_t rng_call_count() { return g_rng_calls.load(std::memory_order_relaxed); }

WilsonInterval wilson_interval(std::uint64_t count, std::uint64_t shots) {
  if (shots == 0) throw std::invalid_argument("wilson_interval: shots must be positive");
  const double n = static_cast<double>(shots);
  const double p = static_cast<double>(count) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = kZ95 / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

SampleReport sample_distribution(const std::array<double, 4>& probs, std::uint64_t shots,
                                 std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sample: shots must be positive");
  check_distribution(probs);
  return finish(shots, seed, draw(probs, shots, RngState(seed)));
}

SampleReport sample_patterns(const RunResult& rr, std::uint64_t shots, std::uint64_t seed) {
  return sample_distribution(run_probabilities(rr), shots, seed);
}

SampleReport sample_patterns_sharded(const RunResult& rr, std::uint64_t shots,
                                     std::uint64_t seed, unsigned shards) {
  if (shots == 0) throw std::invalid_argument("sample: shots must be positive");
  if (shards == 0) throw std::invalid_argument("sample: shard count must be positive");
  const std::array<double, 4> probs = run_probabilities(rr);
  check_distribution(probs);

  std::vector<RngState> starts;
  RngState state(seed);
  for (unsigned i = 0; i < shards; ++i) {
    state = rng_next(state).first;
    starts.push_back(state);
  }

  std::vector<std::array<std::uint64_t, 4>> partial(shards);
  std::vector<std::thread> workers;
  workers.reserve(shards);
  for (unsigned i = 0; i < shards; ++i) {
    const std::uint64_t n = shots / shards + (i < shots % shards ? 1 : 0);
    workers.emplace_back([&, i, n] { partial[i] = draw(probs, n, starts[i]); });
  }
  for (auto& w : workers) w.join();

  std::array<std::uint64_t, 4> counts{};
  for (const auto& c : partial) {
    for (std::size_t k = 0; k < 4; ++k) counts[k] += c[k];
  }
  return finish(shots, seed, counts);
}

}  // namespace depp
