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

#ifndef DEPP_NOISE_HPP
#define DEPP_NOISE_HPP

#include "depp/qcore.hpp"

namespace depp {

/// Weights of the four Bell projectors: phi+ (F), phi- (F1), psi+ (F2), psi- (F3).
/// Each weight lies in [0,1] and they sum to 1 within kIdentityTol.
class BellDiagonalParams {
 public:
  BellDiagonalParams(double phi_plus, double phi_minus, double psi_plus, double psi_minus);

  /// Werner state of fidelity f: the three other weights are (1-f)/3.
  static BellDiagonalParams werner(double f);

  double phi_plus() const { return w_[0]; }
  double phi_minus() const { return w_[1]; }
  double psi_plus() const { return w_[2]; }
  double psi_minus() const { return w_[3]; }

  friend bool operator==(const BellDiagonalParams&, const BellDiagonalParams&) = default;

 private:
  double w_[4];
};

/// Relative amplitude r >= 0 and phase theta of the second emission path.
/// theta is reduced to [0, 2pi).
class SourceConfig {
 public:
  SourceConfig(double r = 1.0, double theta = 0.0);

  double r() const { return r_; }
  double theta() const { return theta_; }

  friend bool operator==(const SourceConfig&, const SourceConfig&) = default;

 private:
  double r_;
  double theta_;
};

/// Product-basis populations of a polarization state.
struct ProductDiagonalParams {
  double hh = 0.0;
  double vv = 0.0;
  double hv = 0.0;
  double vh = 0.0;
};

enum class Photon { A, B };

/// (|a1 b1> + r e^{i theta} |a2 b2>) / sqrt(1 + r^2) over spa_A (x) spa_B.
StateVector make_spatial_state(const SourceConfig& cfg);

DensityMatrix make_bell_diagonal(const BellDiagonalParams& p);

/// Diagonal of a polarization state in the Bell basis.
BellDiagonalParams bell_weights(const DensityMatrix& rho_p);

/// {sqrt(1-px-py-pz) I, sqrt(px) X, sqrt(py) Y, sqrt(pz) Z} on one photon of
/// the 4-level polarization space. Throws std::invalid_argument when any
/// probability is outside [0,1] or their sum exceeds 1.
KrausChannel pauli_channel(double px, double py, double pz, Photon target);

struct ProductDephasing {
  ProductDiagonalParams params;
  DensityMatrix dephased;
};

ProductDephasing product_dephase(const DensityMatrix& rho_p);

/// Destroys the |a1b1>/|a2b2> coherence with probability lambda.
KrausChannel spatial_dephasing(double lambda);

/// Lift a 4-level polarization (or spatial) channel to the 16-level joint
/// space by tensoring with the identity on the other degree of freedom.
KrausChannel lift_polarization_channel(const KrausChannel& ch);
KrausChannel lift_spatial_channel(const KrausChannel& ch);

}  // namespace depp

#endif  // DEPP_NOISE_HPP
