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

#ifndef DEPP_VERIFY_HPP
#define DEPP_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "depp/montecarlo.hpp"
#include "depp/noise.hpp"
#include "depp/optics.hpp"

namespace depp {

/// Reproducible random states driven by the xorshift64* stream.
class StateSampler {
 public:
  explicit StateSampler(std::uint64_t seed) : state_(seed) {}

  double uniform();
  double normal();

  /// Ginibre-distributed full-rank state G G^dag / tr.
  DensityMatrix general(std::size_t dim = 4);
  BellDiagonalParams bell_params();
  DensityMatrix bell_diagonal();
  /// Random mixture of |HH>, |HV>, |VH>, |VV>.
  DensityMatrix product_diagonal();

 private:
  RngState state_;
};

struct InvariantResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Every library invariant, evaluated against the given network where the
/// invariant involves the optics.
std::vector<InvariantResult> run_invariant_suite(const OpticalNetwork& net);

/// Fig. 1 with the wave plate on Alice's lower arm removed. Still a
/// permutation, but HH input leaks into two patterns.
OpticalNetwork perturbed_fig1_network();

}  // namespace depp

#endif  // DEPP_VERIFY_HPP
