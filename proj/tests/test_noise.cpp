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

#include "depp/noise.hpp"
#include "depp/verify.hpp"

using namespace depp;

TEST(BellDiagonalParams, ValidatesWeights) {
  EXPECT_NO_THROW(BellDiagonalParams(0.7, 0.1, 0.1, 0.1));
  EXPECT_THROW(BellDiagonalParams(0.3, 0.3, 0.3, 0.3), std::invalid_argument);
  EXPECT_THROW(BellDiagonalParams(1.1, -0.1, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(BellDiagonalParams(NAN, 0.0, 0.0, 1.0), std::invalid_argument);
}

TEST(BellDiagonalParams, Werner) {
  const BellDiagonalParams w = BellDiagonalParams::werner(0.7);
  EXPECT_DOUBLE_EQ(w.phi_plus(), 0.7);
  EXPECT_NEAR(w.phi_minus(), 0.1, 1e-15);
  EXPECT_NEAR(w.psi_plus(), 0.1, 1e-15);
  EXPECT_NEAR(w.psi_minus(), 0.1, 1e-15);
}

TEST(SourceConfig, ReducesThetaAndRejectsNegativeR) {
  EXPECT_NEAR(SourceConfig(1.0, 2 * std::numbers::pi + 0.5).theta(), 0.5, 1e-12);
  EXPECT_NEAR(SourceConfig(1.0, -0.5).theta(), 2 * std::numbers::pi - 0.5, 1e-12);
  EXPECT_THROW(SourceConfig(-1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(SourceConfig(INFINITY, 0.0), std::invalid_argument);
}

TEST(SpatialState, Amplitudes) {
  const StateVector s = make_spatial_state(SourceConfig(2.0, std::numbers::pi / 2));
  EXPECT_NEAR(std::abs(s[0] - Complex(1.0 / std::sqrt(5.0), 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[3] - Complex(0.0, 2.0 / std::sqrt(5.0))), 0.0, 1e-15);
  EXPECT_EQ(s[1], Complex(0.0));
  EXPECT_EQ(s[2], Complex(0.0));
  const StateVector r0 = make_spatial_state(SourceConfig(0.0, 0.0));
  EXPECT_NEAR(std::abs(r0[0]), 1.0, 1e-15);
}

TEST(BellDiagonal, WeightsRoundTrip) {
  const BellDiagonalParams p(0.4, 0.3, 0.2, 0.1);
  const BellDiagonalParams back = bell_weights(make_bell_diagonal(p));
  EXPECT_NEAR(back.phi_plus(), 0.4, 1e-15);
  EXPECT_NEAR(back.phi_minus(), 0.3, 1e-15);
  EXPECT_NEAR(back.psi_plus(), 0.2, 1e-15);
  EXPECT_NEAR(back.psi_minus(), 0.1, 1e-15);
}

TEST(PauliChannel, MapsPhiPlusToBellWeights) {
  const DensityMatrix phi = DensityMatrix::from_pure(bell_state(BellState::PhiPlus));
  for (Photon t : {Photon::A, Photon::B}) {
    const BellDiagonalParams w = bell_weights(apply_channel(phi, pauli_channel(0.1, 0.2, 0.3, t)));
    EXPECT_NEAR(w.phi_plus(), 0.4, 1e-12);
    EXPECT_NEAR(w.phi_minus(), 0.3, 1e-12);
    EXPECT_NEAR(w.psi_plus(), 0.1, 1e-12);
    EXPECT_NEAR(w.psi_minus(), 0.2, 1e-12);
  }
}

TEST(PauliChannel, RejectsBadProbabilities) {
  EXPECT_THROW(pauli_channel(0.5, 0.5, 0.5, Photon::A), std::invalid_argument);
  EXPECT_THROW(pauli_channel(-0.1, 0.0, 0.0, Photon::A), std::invalid_argument);
  EXPECT_NO_THROW(pauli_channel(1.0, 0.0, 0.0, Photon::B));
}

TEST(ProductDephase, ExtractsPopulations) {
  const ProductDephasing d = product_dephase(make_bell_diagonal(BellDiagonalParams(0.4, 0.2, 0.3, 0.1)));
  EXPECT_NEAR(d.params.hh, 0.3, 1e-15);
  EXPECT_NEAR(d.params.vv, 0.3, 1e-15);
  EXPECT_NEAR(d.params.hv, 0.2, 1e-15);
  EXPECT_NEAR(d.params.vh, 0.2, 1e-15);
  EXPECT_NEAR(std::abs(d.dephased(0, 3)), 0.0, 1e-15);
}

TEST(ProductDephase, Idempotent) {
  StateSampler rng(31);
  for (int i = 0; i < 10; ++i) {
    const DensityMatrix once = product_dephase(rng.general(4)).dephased;
    EXPECT_LE(max_abs_diff(product_dephase(once).dephased.matrix(), once.matrix()), 1e-15);
  }
}

TEST(SpatialDephasing, KillsCoherenceKeepsPopulations) {
  const DensityMatrix s = DensityMatrix::from_pure(make_spatial_state(SourceConfig()));
  const DensityMatrix half = apply_channel(s, spatial_dephasing(0.5));
  EXPECT_NEAR(half(0, 3).real(), 0.25, 1e-15);
  EXPECT_NEAR(half(0, 0).real(), 0.5, 1e-15);
  const DensityMatrix full = apply_channel(s, spatial_dephasing(1.0));
  EXPECT_NEAR(std::abs(full(0, 3)), 0.0, 1e-15);
  EXPECT_THROW(spatial_dephasing(1.5), std::invalid_argument);
}

TEST(Lift, ActsOnTheRightFactor) {
  const KrausChannel pol = pauli_channel(1.0, 0.0, 0.0, Photon::A);
  const KrausChannel lifted = lift_polarization_channel(pol);
  EXPECT_EQ(lifted.dim(), 16u);
  EXPECT_EQ(lift_spatial_channel(spatial_dephasing(0.3)).dim(), 16u);
  EXPECT_THROW(lift_polarization_channel(KrausChannel::identity(2)), std::invalid_argument);
}
