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

#ifndef DEPP_CLI_HPP
#define DEPP_CLI_HPP

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "depp/montecarlo.hpp"
#include "depp/results.hpp"
#include "depp/scenario.hpp"

namespace depp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariantFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

/// Reads a 4x4 polarization state: four rows of eight reals (re im pairs),
/// blank lines and `#` comments ignored. Throws std::runtime_error naming the
/// path on I/O or format problems.
DensityMatrix load_matrix_file(const std::filesystem::path& path);

/// Polarization and spatial inputs for a scenario; matrix paths resolve
/// against `base_dir`.
DensityMatrix polarization_state(const ScenarioConfig& cfg, const std::filesystem::path& base_dir);
DensityMatrix spatial_state(const ScenarioConfig& cfg);

struct Evaluation {
  Json analytic;
  std::optional<SampleReport> sampling;
  /// CSV summary columns; patterns are empty for protocols without a network run.
  double acceptance = 0.0;
  double fidelity = 0.0;
  std::optional<std::array<double, 4>> patterns;
};

/// Analytic evaluation plus sampling when shots > 0 and the protocol runs
/// the network. Draws no random numbers when shots == 0.
Evaluation evaluate_scenario(const ScenarioConfig& cfg, const std::filesystem::path& base_dir);

/// One CSV data row (no trailing newline).
std::string csv_row(const std::string& param, const std::string& value, const Evaluation& ev);

/// Full command line entry. Data goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace depp

#endif  // DEPP_CLI_HPP
