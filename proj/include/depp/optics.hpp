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

#ifndef DEPP_OPTICS_HPP
#define DEPP_OPTICS_HPP

#include <array>
#include <optional>
#include <string_view>

#include "depp/qcore.hpp"

/// Linear-optical network for the one-step purification setup.
///
/// Basis conventions used throughout:
///  - A single photon on one side lives in a 4-level space. Side maps are
///    written over [(H,p1),(V,p1),(H,p2),(V,p2)] -> [(H,x),(V,x),(H,y),(V,y)],
///    i.e. local index 2*port + pol.
///  - The joint 16-level space is ordered (pol_A, spa_A, pol_B, spa_B):
///    index = (2*pol_A + spa_A)*4 + (2*pol_B + spa_B). On the output side the
///    spatial bit is the output port (c/d = 0, e/f = 1).
namespace depp {

enum class Polarization { H = 0, V = 1 };

enum class Port { a1, a2, b1, b2, c, e, d, f };

enum class Side { Alice, Bob };

struct SingleMode {
  Polarization pol;
  Port port;

  friend bool operator==(const SingleMode&, const SingleMode&) = default;
};

bool is_output_port(Port port);
Side side_of(Port port);
std::string_view port_name(Port port);

/// Polarizing beam splitter: H transmits, V reflects.
SingleMode pbs_route(SingleMode in, Port transmit, Port reflect);

/// Half-wave plate at 45 degrees: H <-> V.
Polarization hwp(Polarization pol);

/// Net routing of one photon through its side of the network.
/// Throws std::invalid_argument for a port that does not belong to `side`'s inputs.
SingleMode fig1_route(Side side, SingleMode in);

/// 4x4 permutation matrix of fig1_route in the side-map basis.
Matrix fig1_side_map(Side side);

class OpticalNetwork {
 public:
  /// Both maps must be 4x4 and unitary within kValidityTol.
  OpticalNetwork(Matrix alice_map, Matrix bob_map);

  static OpticalNetwork fig1();

  const Matrix& alice_map() const { return alice_; }
  const Matrix& bob_map() const { return bob_; }

 private:
  Matrix alice_;
  Matrix bob_;
};

struct CoincidencePattern {
  Port alice;
  Port bob;

  friend bool operator==(const CoincidencePattern&, const CoincidencePattern&) = default;
};

/// The four patterns in the fixed order (c,d), (c,f), (e,d), (e,f).
const std::array<CoincidencePattern, 4>& all_patterns();
std::size_t pattern_index(const CoincidencePattern& pat);

/// Joint polarization (x) spatial state in the 16-level convention above.
DensityMatrix embed(const DensityMatrix& rho_p, const DensityMatrix& rho_s);

/// The embedding permutation (pA,pB,sA,sB) -> (pA,sA,pB,sB) as a 16x16 matrix.
Matrix embed_permutation();

Matrix two_photon_unitary(const OpticalNetwork& net);

struct PatternProjection {
  double probability = 0.0;
  /// Normalized polarization state of the pair; absent below kAbsentProbability.
  std::optional<DensityMatrix> state;
};

inline constexpr double kAbsentProbability = 1e-14;

PatternProjection project_pattern(const DensityMatrix& rho_out, const CoincidencePattern& pat);

/// c -> D2, d -> D4, e -> D5, f -> D7. Input ports throw std::invalid_argument.
std::string_view detector_label(Port port);

}  // namespace depp

#endif  // DEPP_OPTICS_HPP
