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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "depp/protocols.hpp"
#include "depp/verify.hpp"

using namespace depp;

namespace {

DensityMatrix pure(BellState b) { return DensityMatrix::from_pure(bell_state(b)); }

DensityMatrix phi_s() { return DensityMatrix::from_pure(make_spatial_state(SourceConfig())); }

}  // namespace

TEST(OneStep, PsiMinusLandsOnCrossPatterns) {
  const RunResult r = one_step_depp(pure(BellState::PsiMinus), phi_s());
  EXPECT_NEAR(r.patterns[0].probability, 0.0, 1e-15);
  EXPECT_NEAR(r.patterns[1].probability, 0.5, 1e-12);
  EXPECT_NEAR(r.patterns[2].probability, 0.5, 1e-12);
  EXPECT_NEAR(r.patterns[3].probability, 0.0, 1e-15);
  EXPECT_EQ(r.patterns[1].detectors, (std::pair<std::string, std::string>{"D2", "D7"}));
  EXPECT_EQ(r.patterns[2].detectors, (std::pair<std::string, std::string>{"D5", "D4"}));
  for (std::size_t k : {1u, 2u}) {
    ASSERT_TRUE(r.patterns[k].raw_state.has_value());
    // Before the flip the pair sits in psi+; afterwards in phi+.
    EXPECT_NEAR(fidelity_pure(*r.patterns[k].raw_state, bell_state(BellState::PsiPlus)), 1.0, 1e-12);
    EXPECT_NEAR(*r.patterns[k].corrected_fidelity, 1.0, 1e-12);
  }
  EXPECT_FALSE(r.patterns[0].raw_state.has_value());
  EXPECT_FALSE(r.patterns[0].corrected_fidelity.has_value());
  EXPECT_NEAR(r.acceptance_probability, 1.0, 1e-12);
  EXPECT_NEAR(r.mean_corrected_fidelity, 1.0, 1e-12);
}

TEST(OneStep, MaximallyMixedStillPurifies) {
  const RunResult r = one_step_depp(DensityMatrix::maximally_mixed(4), phi_s());
  for (const auto& rec : r.patterns) {
    EXPECT_NEAR(rec.probability, 0.25, 1e-12);
    EXPECT_NEAR(*rec.corrected_fidelity, 1.0, 1e-12);
  }
}

TEST(OneStep, DeterministicOnRandomStates) {
  StateSampler rng(41);
  for (int i = 0; i < 30; ++i) {
    const DensityMatrix rho = i % 3 == 0 ? rng.bell_diagonal() : i % 3 == 1 ? rng.product_diagonal() : rng.general(4);
    const RunResult r = one_step_depp(rho, StateVector(make_spatial_state(SourceConfig())));
    EXPECT_NEAR(r.acceptance_probability, 1.0, 1e-12);
    for (const auto& rec : r.patterns) {
      if (rec.corrected_fidelity) {
        EXPECT_NEAR(*rec.corrected_fidelity, 1.0, 1e-12);
      }
    }
  }
}

TEST(OneStep, SpatialDephasingDegradesFidelity) {
  const DensityMatrix s = apply_channel(phi_s(), spatial_dephasing(1.0));
  const RunResult r = one_step_depp(pure(BellState::PhiPlus), s);
  EXPECT_NEAR(r.acceptance_probability, 1.0, 1e-12);
  EXPECT_NEAR(r.mean_corrected_fidelity, 0.5, 1e-12);
}

TEST(OneStep, RejectsWrongDimensions) {
  EXPECT_THROW(one_step_depp(DensityMatrix::maximally_mixed(2), phi_s()), std::invalid_argument);
}

TEST(Correction, FlipsOnlyCrossPatterns) {
  const DensityMatrix psi = pure(BellState::PsiPlus);
  EXPECT_NEAR(fidelity_pure(apply_correction(all_patterns()[1], psi), bell_state(BellState::PhiPlus)),
              1.0, 1e-15);
  EXPECT_NEAR(fidelity_pure(apply_correction(all_patterns()[0], psi), bell_state(BellState::PsiPlus)),
              1.0, 1e-15);
  EXPECT_THROW(apply_correction({Port::c, Port::e}, psi), std::invalid_argument);
}

TEST(Recurrence, KnownValues) {
  EXPECT_NEAR(bennett_recurrence(0.7), 25.0 / 34.0, 1e-15);
  EXPECT_NEAR(bennett_success_probability(0.7), 0.68, 1e-15);
  EXPECT_NEAR(bennett_recurrence(0.0), 0.2, 1e-15);
  EXPECT_NEAR(bennett_success_probability(0.25), 0.5, 1e-15);
  EXPECT_NEAR(bennett_recurrence(0.9), 0.9263959390862944, 1e-15);
}

TEST(Recurrence, FixedPoints) {
  for (double f : {0.25, 0.5, 1.0}) EXPECT_NEAR(bennett_recurrence(f), f, 1e-12);
}

TEST(Recurrence, MatchesBruteForce) {
  for (int i = 0; i <= 10; ++i) {
    const double f = 0.1 * i;
    const BennettStep s = bennett_step_exact(f);
    EXPECT_NEAR(s.fidelity, bennett_recurrence(f), 1e-12) << f;
    EXPECT_NEAR(s.success_probability, bennett_success_probability(f), 1e-12) << f;
  }
}

TEST(Recurrence, RejectsOutOfRange) {
  EXPECT_THROW(bennett_recurrence(1.5), std::invalid_argument);
  EXPECT_THROW(bennett_step_exact(-0.1), std::invalid_argument);
  EXPECT_THROW(bennett_iterate(0.7, -1), std::invalid_argument);
}

TEST(Iterate, ZeroRoundsIsSingleEntry) {
  const RecurrenceTrace t = bennett_iterate(0.7, 0);
  ASSERT_EQ(t.fidelities.size(), 1u);
  EXPECT_TRUE(t.success_probs.empty());
  EXPECT_DOUBLE_EQ(t.expected_pairs_consumed, 1.0);
}

TEST(Iterate, TwoRoundsFromPointSeven) {
  const RecurrenceTrace t = bennett_iterate(0.7, 2);
  ASSERT_EQ(t.fidelities.size(), 3u);
  EXPECT_NEAR(t.fidelities[1], 25.0 / 34.0, 1e-15);
  EXPECT_NEAR(t.fidelities[2], 0.7731707317073171, 1e-14);
  EXPECT_NEAR(t.expected_pairs_consumed, 8.292682926829269, 1e-12);
}

TEST(SimonPan, FoldsBitFlipsAndHalvesEfficiency) {
  const SimonPanOutcome o = simon_pan_model(BellDiagonalParams(0.4, 0.3, 0.2, 0.1));
  EXPECT_EQ(o.efficiency, 0.5);
  EXPECT_NEAR(o.params.phi_plus(), 0.6, 1e-15);
  EXPECT_NEAR(o.params.phi_minus(), 0.4, 1e-15);
  EXPECT_EQ(o.params.psi_plus(), 0.0);
  EXPECT_EQ(o.params.psi_minus(), 0.0);
}

TEST(Compare, WernerPointSevenToPointNineNine) {
  const ComparisonRecord c = compare_protocols(BellDiagonalParams::werner(0.7), 0.99);
  EXPECT_NEAR(c.input_fidelity, 0.7, 1e-15);
  EXPECT_NEAR(c.depp.fidelity, 1.0, 1e-12);
  EXPECT_EQ(c.depp.pairs_consumed, 1.0);
  ASSERT_TRUE(c.bennett.reachable);
  EXPECT_EQ(c.bennett.rounds, 12);
  EXPECT_GE(c.bennett.final_fidelity, 0.99);
  EXPECT_NEAR(c.bennett.pairs_consumed, 29561.549918827714, 1e-6);
  EXPECT_NEAR(c.bennett.success_probability, 0.13855836420103476, 1e-12);
  EXPECT_EQ(c.simon_pan.efficiency, 0.5);
}

TEST(Compare, TargetOneIsUnreachable) {
  const ComparisonRecord c = compare_protocols(BellDiagonalParams::werner(0.9), 1.0);
  EXPECT_FALSE(c.bennett.reachable);
  EXPECT_NEAR(c.depp.fidelity, 1.0, 1e-12);
}

TEST(Compare, BelowHalfIsUnreachable) {
  EXPECT_FALSE(compare_protocols(BellDiagonalParams::werner(0.4), 0.9).bennett.reachable);
}

TEST(Compare, AlreadyAboveTarget) {
  const ComparisonRecord c = compare_protocols(BellDiagonalParams::werner(1.0), 1.0);
  EXPECT_TRUE(c.bennett.reachable);
  EXPECT_EQ(c.bennett.rounds, 0);
  EXPECT_EQ(c.bennett.pairs_consumed, 1.0);
}

TEST(Compare, RejectsBadTarget) {
  EXPECT_THROW(compare_protocols(BellDiagonalParams::werner(0.9), 1.5), std::invalid_argument);
}

TEST(RunDistance, IdenticalRunsAndPresenceMismatch) {
  const RunResult a = one_step_depp(pure(BellState::PhiPlus), phi_s());
  EXPECT_EQ(run_result_distance(a, a), 0.0);
  const RunResult b = one_step_depp(pure(BellState::PsiPlus), phi_s());
  EXPECT_TRUE(std::isinf(run_result_distance(a, b)));
}

TEST(SourceImperfection, ClosedForm) {
  const DensityMatrix hh = DensityMatrix::from_pure(StateVector::basis(4, 0));
  for (double r : {0.0, 0.5, 1.0, 2.0}) {
    for (double th : {0.0, std::numbers::pi / 2, std::numbers::pi}) {
      const RunResult run =
          one_step_depp(hh, DensityMatrix::from_pure(make_spatial_state(SourceConfig(r, th))));
      const double want = std::norm(1.0 + std::polar(r, th)) / (2 * (1 + r * r));
      ASSERT_TRUE(run.patterns[0].corrected_fidelity.has_value());
      EXPECT_NEAR(*run.patterns[0].corrected_fidelity, want, 1e-12) << r << " " << th;
    }
  }
}
