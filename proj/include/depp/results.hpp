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

#ifndef DEPP_RESULTS_HPP
#define DEPP_RESULTS_HPP

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "depp/montecarlo.hpp"
#include "depp/protocols.hpp"
#include "depp/scenario.hpp"

namespace depp {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolName = "depp";
inline constexpr std::string_view kToolVersion = "1.0.0";

Json to_json(const DensityMatrix& rho);
Json to_json(const RunResult& rr);
Json to_json(const RecurrenceTrace& trace);
Json to_json(const SampleReport& report);
Json to_json(const SimonPanOutcome& outcome);
Json to_json(const ComparisonRecord& rec);
Json to_json(const ScenarioConfig& cfg);

DensityMatrix density_from_json(const Json& j);
RunResult run_result_from_json(const Json& j);
RecurrenceTrace recurrence_trace_from_json(const Json& j);
SampleReport sample_report_from_json(const Json& j);

/// Canonical text form: two-space indentation, keys in insertion order,
/// arrays of scalars on one line, reals at 17 significant digits.
std::string serialize_document(const Json& doc);

/// Throws std::invalid_argument on malformed text.
Json parse_document(std::string_view text);

std::string serialize_result(const RunResult& rr);
std::string serialize_result(const RecurrenceTrace& trace);
std::string serialize_result(const SampleReport& report);
std::string serialize_result(const ComparisonRecord& rec);

/// Top-level results document: scenario, analytic, sampling (only when
/// given), meta.
Json make_results_document(const ScenarioConfig& cfg, Json analytic,
                           const std::optional<SampleReport>& sampling);

/// Throws std::runtime_error naming the path when it cannot be written.
void write_text_file(const std::string& path, std::string_view text);

inline constexpr std::string_view kCsvHeader =
    "param,value,acceptance,fidelity,pattern_cd,pattern_cf,pattern_ed,pattern_ef";

}  // namespace depp

#endif  // DEPP_RESULTS_HPP
