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

#ifndef DEPP_PROTOCOLS_HPP
#define DEPP_PROTOCOLS_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "depp/noise.hpp"
#include "depp/optics.hpp"
#include "depp/qcore.hpp"

namespace depp {

struct PatternRecord {
  CoincidencePattern pattern;
  std::pair<std::string, std::string> detectors;
  double probability = 0.0;
  std::optional<DensityMatrix> raw_state;
  std::optional<DensityMatrix> corrected_state;
  std::optional<double> corrected_fidelity;
};

/// Outcome of one pass through the network, patterns in all_patterns() order.
struct RunResult {
  std::array<PatternRecord, 4> patterns;
  double acceptance_probability = 0.0;
  /// Probability-weighted corrected fidelity over the accepted patterns.
  double mean_corrected_fidelity = 0.0;
};

struct RecurrenceTrace {
  std::vector<double> fidelities;
  std::vector<double> success_probs;
  double expected_pairs_consumed = 1.0;
};

struct BennettStep {
  double fidelity = 0.0;
  double success_probability = 0.0;
};

struct SimonPanOutcome {
  BellDiagonalParams params = BellDiagonalParams::werner(1.0);
  double efficiency = 0.0;
};

struct DeppSummary {
  double fidelity = 0.0;
  double acceptance = 0.0;
  double pairs_consumed = 1.0;
};

struct BennettSummary {
  bool reachable = false;
  int rounds = 0;
  double final_fidelity = 0.0;
  /// Product of the per-round coincidence probabilities.
  double success_probability = 0.0;
  double pairs_consumed = 0.0;
};

struct ComparisonRecord {
  double input_fidelity = 0.0;
  double target_fidelity = 0.0;
  DeppSummary depp;
  BennettSummary bennett;
  SimonPanOutcome simon_pan;
};

/// Runs the polarization state through the network with the given spatial
/// state, projects every coincidence pattern and applies the recovery flip.
RunResult one_step_depp(const DensityMatrix& rho_p, const DensityMatrix& spatial,
                        const OpticalNetwork& net);
RunResult one_step_depp(const DensityMatrix& rho_p, const DensityMatrix& spatial);
RunResult one_step_depp(const DensityMatrix& rho_p, const StateVector& spatial);

/// Identity for (c,d) and (e,f); sigma_x on photon B for (c,f) and (e,d).
DensityMatrix apply_correction(const CoincidencePattern& pat, const DensityMatrix& state);

/// One round of the recurrence-based purification map on Werner fidelity F.
double bennett_recurrence(double f);
/// Coincidence probability of that round (the map's denominator).
double bennett_success_probability(double f);

/// Brute-force two-pair simulation of one recurrence round: bilateral CNOTs,
/// coincidence on the target pair, fidelity of the surviving source pair.
BennettStep bennett_step_exact(double f);

RecurrenceTrace bennett_iterate(double f0, int rounds);

SimonPanOutcome simon_pan_model(const BellDiagonalParams& p);

/// Side-by-side resource comparison. `rho_p` feeds the one-step run; the
/// recurrence uses its phi+ fidelity and the Simon-Pan model its Bell weights.
ComparisonRecord compare_protocols(const DensityMatrix& rho_p, const DensityMatrix& spatial,
                                   double target_fidelity);
ComparisonRecord compare_protocols(const BellDiagonalParams& p, double target_fidelity);

/// Largest field-by-field difference between two runs (probabilities,
/// fidelities, state entries). Infinity when a state or fidelity is present in
/// one run and absent in the other.
double run_result_distance(const RunResult& a, const RunResult& b);

/// Rounds cap after which the recurrence is reported unreachable.
inline constexpr int kMaxBennettRounds = 10000;

}  // namespace depp

#endif  // DEPP_PROTOCOLS_HPP
