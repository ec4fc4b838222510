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

#include <stdexcept>

#include "depp/noise.hpp"
#include "depp/optics.hpp"
#include "depp/verify.hpp"

using namespace depp;

namespace {

using P = Polarization;

DensityMatrix phi_s() { return DensityMatrix::from_pure(make_spatial_state(SourceConfig())); }

DensityMatrix product(int idx) { return DensityMatrix::from_pure(StateVector::basis(4, idx)); }

}  // namespace

TEST(Elements, PbsTransmitsHReflectsV) {
  EXPECT_EQ(pbs_route({P::H, Port::a1}, Port::c, Port::e), (SingleMode{P::H, Port::c}));
  EXPECT_EQ(pbs_route({P::V, Port::a1}, Port::c, Port::e), (SingleMode{P::V, Port::e}));
  EXPECT_EQ(hwp(P::H), P::V);
  EXPECT_EQ(hwp(P::V), P::H);
}

TEST(Fig1Routing, AliceTable) {
  EXPECT_EQ(fig1_route(Side::Alice, {P::H, Port::a1}), (SingleMode{P::H, Port::c}));
  EXPECT_EQ(fig1_route(Side::Alice, {P::V, Port::a1}), (SingleMode{P::V, Port::e}));
  EXPECT_EQ(fig1_route(Side::Alice, {P::H, Port::a2}), (SingleMode{P::V, Port::c}));
  EXPECT_EQ(fig1_route(Side::Alice, {P::V, Port::a2}), (SingleMode{P::H, Port::e}));
}

TEST(Fig1Routing, BobTable) {
  EXPECT_EQ(fig1_route(Side::Bob, {P::H, Port::b1}), (SingleMode{P::H, Port::d}));
  EXPECT_EQ(fig1_route(Side::Bob, {P::V, Port::b1}), (SingleMode{P::V, Port::f}));
  EXPECT_EQ(fig1_route(Side::Bob, {P::H, Port::b2}), (SingleMode{P::V, Port::d}));
  EXPECT_EQ(fig1_route(Side::Bob, {P::V, Port::b2}), (SingleMode{P::H, Port::f}));
}

TEST(Fig1Routing, WrongSideThrows) {
  EXPECT_THROW(fig1_route(Side::Alice, {P::H, Port::b1}), std::invalid_argument);
  EXPECT_THROW(fig1_route(Side::Bob, {P::H, Port::c}), std::invalid_argument);
}

TEST(Ports, NamesSidesAndDetectors) {
  EXPECT_EQ(port_name(Port::a2), "a2");
  EXPECT_EQ(side_of(Port::f), Side::Bob);
  EXPECT_EQ(side_of(Port::e), Side::Alice);
  EXPECT_TRUE(is_output_port(Port::d));
  EXPECT_FALSE(is_output_port(Port::b1));
  EXPECT_EQ(detector_label(Port::c), "D2");
  EXPECT_EQ(detector_label(Port::d), "D4");
  EXPECT_EQ(detector_label(Port::e), "D5");
  EXPECT_EQ(detector_label(Port::f), "D7");
  EXPECT_THROW(detector_label(Port::a1), std::invalid_argument);
}

TEST(Network, SideMapsArePermutations) {
  const OpticalNetwork net = OpticalNetwork::fig1();
  EXPECT_TRUE(is_permutation(net.alice_map()));
  EXPECT_TRUE(is_permutation(net.bob_map()));
  EXPECT_TRUE(is_unitary(two_photon_unitary(net), 1e-10));
  EXPECT_TRUE(is_permutation(two_photon_unitary(net)));
}

TEST(Network, RejectsNonUnitaryMaps) {
  EXPECT_THROW(OpticalNetwork(Matrix::Ones(4, 4), Matrix::Identity(4, 4)), std::invalid_argument);
  EXPECT_THROW(OpticalNetwork(Matrix::Identity(2, 2), Matrix::Identity(4, 4)), std::invalid_argument);
}

TEST(Patterns, OrderAndIndex) {
  const auto& pats = all_patterns();
  EXPECT_EQ(pats[0], (CoincidencePattern{Port::c, Port::d}));
  EXPECT_EQ(pats[1], (CoincidencePattern{Port::c, Port::f}));
  EXPECT_EQ(pats[2], (CoincidencePattern{Port::e, Port::d}));
  EXPECT_EQ(pats[3], (CoincidencePattern{Port::e, Port::f}));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(pattern_index(pats[i]), i);
  EXPECT_THROW(pattern_index({Port::c, Port::e}), std::invalid_argument);
}

TEST(Embed, IsPermutedTensorProduct) {
  StateVector p = StateVector::basis(4, 1);  // HV
  StateVector s = StateVector::basis(4, 2);  // a2 b1
  const DensityMatrix j = embed(DensityMatrix::from_pure(p), DensityMatrix::from_pure(s));
  // (pol_A=0, spa_A=1, pol_B=1, spa_B=0) -> (2*0+1)*4 + (2*1+0) = 6
  EXPECT_NEAR(j(6, 6).real(), 1.0, 1e-15);
  EXPECT_TRUE(is_permutation(embed_permutation()));
}

TEST(BranchOrthogonality, ProductInputsHitOnePatternEach) {
  const Matrix u = two_photon_unitary(OpticalNetwork::fig1());
  for (int in = 0; in < 4; ++in) {
    const DensityMatrix out = apply_unitary(embed(product(in), phi_s()), u);
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_NEAR(project_pattern(out, all_patterns()[k]).probability,
                  static_cast<int>(k) == in ? 1.0 : 0.0, 1e-12)
          << "input " << in << " pattern " << k;
    }
  }
}

TEST(BranchOrthogonality, PerturbedNetworkLeaks) {
  const Matrix u = two_photon_unitary(perturbed_fig1_network());
  const DensityMatrix out = apply_unitary(embed(product(0), phi_s()), u);
  EXPECT_NEAR(project_pattern(out, all_patterns()[0]).probability, 0.5, 1e-12);
}

TEST(ProjectPattern, ProbabilitiesSumToOne) {
  StateSampler rng(21);
  const Matrix u = two_photon_unitary(OpticalNetwork::fig1());
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix out = apply_unitary(embed(rng.general(4), phi_s()), u);
    double total = 0.0;
    for (const auto& pat : all_patterns()) total += project_pattern(out, pat).probability;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(ProjectPattern, AbsentStateBelowThreshold) {
  const Matrix u = two_photon_unitary(OpticalNetwork::fig1());
  const DensityMatrix out = apply_unitary(embed(product(0), phi_s()), u);
  const PatternProjection cf = project_pattern(out, all_patterns()[1]);
  EXPECT_LT(cf.probability, kAbsentProbability);
  EXPECT_FALSE(cf.state.has_value());
  const PatternProjection cd = project_pattern(out, all_patterns()[0]);
  ASSERT_TRUE(cd.state.has_value());
  EXPECT_NEAR(fidelity_pure(*cd.state, bell_state(BellState::PhiPlus)), 1.0, 1e-12);
}

TEST(ProjectPattern, RejectsWrongDimension) {
  EXPECT_THROW(project_pattern(DensityMatrix::maximally_mixed(4), all_patterns()[0]),
               std::invalid_argument);
}
