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

#ifndef DEPP_TESTS_SCENARIO_FUZZ_HPP
#define DEPP_TESTS_SCENARIO_FUZZ_HPP

#include <cstdint>
#include <exception>
#include <string>
#include <string_view>
#include <variant>

#include "depp/montecarlo.hpp"
#include "depp/scenario.hpp"

namespace depp {

struct FuzzSummary {
  int cases = 0;
  int accepted = 0;
  int exceptions = 0;
  int nonlocal_errors = 0;
  std::string first_problem;
};

/// True when (line, column) names a byte of `text`. Empty input has no bytes,
/// so 1:1 is the only sensible location there.
inline bool error_is_local(std::string_view text, const ParseError& e) {
  if (text.empty()) return e.line == 1 && e.column == 1;
  if (e.line < 1 || e.column < 1) return false;
  std::size_t start = 0;
  for (int l = 1; l < e.line; ++l) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) return false;
    start = nl + 1;
  }
  return start + static_cast<std::size_t>(e.column - 1) < text.size();
}

namespace fuzz_detail {

class Bytes {
 public:
  explicit Bytes(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    auto [n, w] = rng_next(s_);
    s_ = n;
    return w;
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  RngState s_;
};

inline void check_one(const std::string& text, FuzzSummary& sum) {
  ++sum.cases;
  try {
    const auto r = parse_scenario(text);
    if (const auto* e = std::get_if<ParseError>(&r)) {
      if (!error_is_local(text, *e)) {
        if (sum.nonlocal_errors++ == 0) sum.first_problem = "non-local error " + e->to_string();
      }
    } else {
      ++sum.accepted;
    }
  } catch (const std::exception& ex) {
    if (sum.exceptions++ == 0) sum.first_problem = std::string("exception: ") + ex.what();
  } catch (...) {
    if (sum.exceptions++ == 0) sum.first_problem = "unknown exception";
  }
}

}  // namespace fuzz_detail

/// Uniform random byte strings of length 0..max_len.
inline FuzzSummary fuzz_parser(int cases, std::size_t max_len, std::uint64_t seed) {
  fuzz_detail::Bytes rng(seed);
  FuzzSummary sum;
  for (int i = 0; i < cases; ++i) {
    std::string text(rng.below(max_len + 1), '\0');
    for (char& c : text) c = static_cast<char>(rng.next() >> 56);
    fuzz_detail::check_one(text, sum);
  }
  return sum;
}

/// Byte flips, insertions and deletions applied to a valid scenario.
inline FuzzSummary fuzz_parser_mutations(std::string_view base, int cases, std::uint64_t seed) {
  static constexpr std::string_view kAlphabet = "[]=#\"\\\n .-+e0123456789abcFxyz_";
  fuzz_detail::Bytes rng(seed);
  FuzzSummary sum;
  for (int i = 0; i < cases; ++i) {
    std::string text(base);
    const std::size_t edits = 1 + rng.below(4);
    for (std::size_t k = 0; k < edits; ++k) {
      const char c = kAlphabet[rng.below(kAlphabet.size())];
      const std::size_t at = text.empty() ? 0 : rng.below(text.size());
      switch (rng.below(3)) {
        case 0:
          if (!text.empty()) text[at] = c;
          break;
        case 1:
          text.insert(text.begin() + static_cast<std::ptrdiff_t>(at), c);
          break;
        default:
          if (!text.empty()) text.erase(at, 1);
          break;
      }
    }
    fuzz_detail::check_one(text, sum);
  }
  return sum;
}

}  // namespace depp

#endif  // DEPP_TESTS_SCENARIO_FUZZ_HPP
