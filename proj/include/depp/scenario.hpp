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

#ifndef DEPP_SCENARIO_HPP
#define DEPP_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "depp/noise.hpp"

/// Scenario files (.epp).
///
///   # comment
///   [source]              r, theta (radians)
///   [noise.polarization]  model = bell_diagonal | pauli | matrix
///                           bell_diagonal: F, F1, F2, F3
///                           pauli: px, py, pz, target (A or B)
///                           matrix: file (4 rows of 4 "re im" pairs)
///   [noise.spatial]       dephasing
///   [protocol]            name = one_step_depp | bennett | simon_pan | compare
///                           rounds (bennett only), target_fidelity (compare only)
///   [run]                 shots, seed, output
///
/// Values are decimal numbers, bare words or double-quoted strings.
namespace depp {

struct BellDiagonalNoise {
  BellDiagonalParams params;
  friend bool operator==(const BellDiagonalNoise&, const BellDiagonalNoise&) = default;
};

struct PauliNoise {
  double px = 0.0;
  double py = 0.0;
  double pz = 0.0;
  Photon target = Photon::B;
  friend bool operator==(const PauliNoise&, const PauliNoise&) = default;
};

struct MatrixNoise {
  std::string path;
  friend bool operator==(const MatrixNoise&, const MatrixNoise&) = default;
};

using PolarizationNoise = std::variant<BellDiagonalNoise, PauliNoise, MatrixNoise>;

enum class ProtocolKind { OneStepDepp, Bennett, SimonPan, Compare };

std::string_view protocol_name(ProtocolKind kind);

struct RunSettings {
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  std::optional<std::string> output;
  friend bool operator==(const RunSettings&, const RunSettings&) = default;
};

struct ScenarioConfig {
  SourceConfig source;
  PolarizationNoise noise = BellDiagonalNoise{BellDiagonalParams(1.0, 0.0, 0.0, 0.0)};
  double spatial_dephasing = 0.0;
  ProtocolKind protocol = ProtocolKind::OneStepDepp;
  std::optional<int> rounds;
  std::optional<double> target_fidelity;
  RunSettings run;
  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Line and column are 1-based and refer to `origin`: the scenario text, or a
/// single `--set` override string.
struct ParseError {
  std::string origin;
  int line = 1;
  int column = 1;
  std::string message;

  std::string to_string() const;
};

enum class ValueKind { Number, Word, String };

struct RawValue {
  ValueKind kind = ValueKind::Word;
  /// Source spelling for numbers and words, unescaped contents for strings.
  std::string text;
  double number = 0.0;
};

struct RawEntry {
  std::string key;
  RawValue value;
  std::string origin;
  int line = 0;
  int key_column = 0;
  int value_column = 0;
};

struct RawSection {
  std::string name;
  int line = 0;
  int column = 0;
  std::vector<RawEntry> entries;
};

/// Lexed scenario before semantic validation; overrides are applied here.
struct RawScenario {
  std::string origin;
  std::vector<RawSection> sections;

  const RawEntry* find(std::string_view section, std::string_view key) const;
};

/// Numeric keys accepted by sweeps, as dotted paths.
std::span<const std::string_view> numeric_scenario_keys();

std::variant<RawScenario, ParseError> lex_scenario(std::string_view text,
                                                   std::string origin = "<scenario>");

/// Applies one `section.key=value` override. Returns an error located in the
/// override string on malformed input.
std::optional<ParseError> apply_override(RawScenario& raw, std::string_view assignment);

std::variant<ScenarioConfig, ParseError> build_scenario(const RawScenario& raw);

/// lex + overrides + build. Never throws for any input text.
std::variant<ScenarioConfig, ParseError> parse_scenario(std::string_view text,
                                                        std::span<const std::string> overrides = {},
                                                        std::string origin = "<scenario>");

/// Canonical scenario text: fixed section and key order, every key written,
/// numbers at 17 significant digits.
std::string format_scenario(const ScenarioConfig& cfg);

/// %.17g rendering shared by every serializer.
std::string format_real(double x);

}  // namespace depp

#endif  // DEPP_SCENARIO_HPP
