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

#include "depp/optics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace depp {

namespace {

struct SidePorts {
  Port in1, in2, out1, out2;
};

SidePorts ports_of(Side side) {
  if (side == Side::Alice) return {Port::a1, Port::a2, Port::c, Port::e};
  return {Port::b1, Port::b2, Port::d, Port::f};
}

// Local side-map index 2*port + pol, port 0/1 being the first/second port of the side.
int side_index(const SingleMode& m, Port first, Port second) {
  int port_bit;
  if (m.port == first) {
    port_bit = 0;
  } else if (m.port == second) {
    port_bit = 1;
  } else {
    throw std::invalid_argument("mode port " + std::string(port_name(m.port)) +
                                " does not belong to this side");
  }
  return 2 * port_bit + static_cast<int>(m.pol);
}

// Swaps the two bits of a 4-level local index: side-map order (2*port+pol)
// <-> embed order (2*pol+spa).
Matrix bit_swap4() {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 3) = 1.0;
  return s;
}

}  // namespace

bool is_output_port(Port port) {
  return port == Port::c || port == Port::e || port == Port::d || port == Port::f;
}

Side side_of(Port port) {
  switch (port) {
    case Port::a1:
    case Port::a2:
    case Port::c:
    case Port::e:
      return Side::Alice;
    default:
      return Side::Bob;
  }
}

std::string_view port_name(Port port) {
  switch (port) {
    case Port::a1: return "a1";
    case Port::a2: return "a2";
    case Port::b1: return "b1";
    case Port::b2: return "b2";
    case Port::c: return "c";
    case Port::e: return "e";
    case Port::d: return "d";
    case Port::f: return "f";
  }
  return "?";
}

SingleMode pbs_route(SingleMode in, Port transmit, Port reflect) {
  return {in.pol, in.pol == Polarization::H ? transmit : reflect};
}

Polarization hwp(Polarization pol) {
  return pol == Polarization::H ? Polarization::V : Polarization::H;
}

SingleMode fig1_route(Side side, SingleMode in) {
  const SidePorts p = ports_of(side);
  if (in.port == p.in1) return pbs_route(in, p.out1, p.out2);
  if (in.port == p.in2) {
    // The lower arm carries a wave plate behind its splitter.
    SingleMode out = pbs_route(in, p.out1, p.out2);
    out.pol = hwp(out.pol);
    return out;
  }
  throw std::invalid_argument("fig1_route: port " + std::string(port_name(in.port)) +
                              " is not an input of this side");
}

Matrix fig1_side_map(Side side) {
  const SidePorts p = ports_of(side);
  Matrix m = Matrix::Zero(4, 4);
  for (Port port : {p.in1, p.in2}) {
    for (Polarization pol : {Polarization::H, Polarization::V}) {
      const SingleMode in{pol, port};
      const SingleMode out = fig1_route(side, in);
      m(side_index(out, p.out1, p.out2), side_index(in, p.in1, p.in2)) = 1.0;
    }
  }
  return m;
}

OpticalNetwork::OpticalNetwork(Matrix alice_map, Matrix bob_map)
    : alice_(std::move(alice_map)), bob_(std::move(bob_map)) {
  for (const Matrix* m : {&alice_, &bob_}) {
    if (m->rows() != 4 || m->cols() != 4 || !is_unitary(*m)) {
      throw std::invalid_argument("OpticalNetwork: side maps must be 4x4 unitaries");
    }
  }
}

OpticalNetwork OpticalNetwork::fig1() {
  return OpticalNetwork(fig1_side_map(Side::Alice), fig1_side_map(Side::Bob));
}

const std::array<CoincidencePattern, 4>& all_patterns() {
  static const std::array<CoincidencePattern, 4> patterns{{
      {Port::c, Port::d},
      {Port::c, Port::f},
      {Port::e, Port::d},
      {Port::e, Port::f},
  }};
  return patterns;
}

std::size_t pattern_index(const CoincidencePattern& pat) {
  const auto& all = all_patterns();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i] == pat) return i;
  }
  throw std::invalid_argument("pattern_index: not a coincidence pattern");
}

Matrix embed_permutation() {
  Matrix p = Matrix::Zero(16, 16);
  for (int pa = 0; pa < 2; ++pa) {
    for (int pb = 0; pb < 2; ++pb) {
      for (int sa = 0; sa < 2; ++sa) {
        for (int sb = 0; sb < 2; ++sb) {
          const int from = pa * 8 + pb * 4 + sa * 2 + sb;
          const int to = (2 * pa + sa) * 4 + (2 * pb + sb);
          p(to, from) = 1.0;
        }
      }
    }
  }
  return p;
}

DensityMatrix embed(const DensityMatrix& rho_p, const DensityMatrix& rho_s) {
  if (rho_p.dim() != 4 || rho_s.dim() != 4) {
    throw std::invalid_argument("embed: polarization and spatial states must both be 4x4");
  }
  static const Matrix perm = embed_permutation();
  return DensityMatrix(perm * kron(rho_p.matrix(), rho_s.matrix()) * perm.transpose());
}

Matrix two_photon_unitary(const OpticalNetwork& net) {
  static const Matrix swap = bit_swap4();
  return kron(swap * net.alice_map() * swap, swap * net.bob_map() * swap);
}

PatternProjection project_pattern(const DensityMatrix& rho_out, const CoincidencePattern& pat) {
  if (rho_out.dim() != 16) throw std::invalid_argument("project_pattern: expected a 16x16 state");
  if (side_of(pat.alice) != Side::Alice || side_of(pat.bob) != Side::Bob ||
      !is_output_port(pat.alice) || !is_output_port(pat.bob)) {
    throw std::invalid_argument("project_pattern: not a coincidence pattern");
  }
  const int xa = pat.alice == Port::c ? 0 : 1;
  const int xb = pat.bob == Port::d ? 0 : 1;
  auto joint = [&](int pol_pair) {
    const int pa = pol_pair >> 1;
    const int pb = pol_pair & 1;
    return (2 * pa + xa) * 4 + (2 * pb + xb);
  };
  Matrix block(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) block(i, j) = rho_out.matrix()(joint(i), joint(j));
  }
  PatternProjection out;
  out.probability = std::max(0.0, block.trace().real());
  if (out.probability >= kAbsentProbability) out.state.emplace(block / out.probability);
  return out;
}

std::string_view detector_label(Port port) {
  switch (port) {
    case Port::c: return "D2";
    case Port::d: return "D4";
    case Port::e: return "D5";
    case Port::f: return "D7";
    default:
      throw std::invalid_argument("detector_label: " + std::string(port_name(port)) +
                                  " is not an output port");
  }
}

}  // namespace depp
