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

#include "depp/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "depp/optics.hpp"

namespace depp {

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

Matrix on_photon(const Matrix& single, Photon target) {
  const Matrix id = Matrix::Identity(2, 2);
  return target == Photon::A ? kron(single, id) : kron(id, single);
}

KrausChannel lift(const KrausChannel& ch, bool polarization) {
  if (ch.dim() != 4) throw std::invalid_argument("lift: channel must act on a 4-level space");
  static const Matrix perm = embed_permutation();
  const Matrix id = Matrix::Identity(4, 4);
  std::vector<Matrix> ops;
  ops.reserve(ch.operators().size());
  for (const auto& k : ch.operators()) {
    const Matrix product = polarization ? kron(k, id) : kron(id, k);
    ops.push_back(perm * product * perm.transpose());
  }
  return KrausChannel(std::move(ops));
}

}  // namespace

BellDiagonalParams::BellDiagonalParams(double phi_plus, double phi_minus, double psi_plus,
                                       double psi_minus)
    : w_{phi_plus, phi_minus, psi_plus, psi_minus} {
  for (double w : w_) {
    if (!is_probability(w)) {
      throw std::invalid_argument("Bell-diagonal weight " + std::to_string(w) +
                                  " is outside [0,1]");
    }
  }
  const double sum = w_[0] + w_[1] + w_[2] + w_[3];
  if (std::abs(sum - 1.0) > kIdentityTol) {
    throw std::invalid_argument("Bell-diagonal weights must satisfy F+F1+F2+F3=1 (sum is " +
                                std::to_string(sum) + ")");
  }
}

BellDiagonalParams BellDiagonalParams::werner(double f) {
  const double rest = (1.0 - f) / 3.0;
  return BellDiagonalParams(f, rest, rest, rest);
}

SourceConfig::SourceConfig(double r, double theta) : r_(r) {
  if (!std::isfinite(r) || r < 0.0) throw std::invalid_argument("source r must be >= 0");
  if (!std::isfinite(theta)) throw std::invalid_argument("source theta must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta_ = std::fmod(theta, two_pi);
  if (theta_ < 0.0) theta_ += two_pi;
  if (theta_ >= two_pi) theta_ = 0.0;
}

StateVector make_spatial_state(const SourceConfig& cfg) {
  Vector v = Vector::Zero(4);
  v(0) = 1.0;
  v(3) = cfg.r() * std::polar(1.0, cfg.theta());
  return StateVector(std::move(v));
}

DensityMatrix make_bell_diagonal(const BellDiagonalParams& p) {
  const double w[4] = {p.phi_plus(), p.phi_minus(), p.psi_plus(), p.psi_minus()};
  const BellState kinds[4] = {BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus,
                              BellState::PsiMinus};
  Matrix m = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    const Vector v = bell_state(kinds[i]).amplitudes();
    m += w[i] * (v * v.adjoint());
  }
  return DensityMatrix(std::move(m));
}

BellDiagonalParams bell_weights(const DensityMatrix& rho_p) {
  if (rho_p.dim() != 4) throw std::invalid_argument("bell_weights: expected a 4x4 state");
  double w[4];
  const BellState kinds[4] = {BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus,
                              BellState::PsiMinus};
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    w[i] = fidelity_pure(rho_p, bell_state(kinds[i]));
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return BellDiagonalParams(w[0], w[1], w[2], w[3]);
}

KrausChannel pauli_channel(double px, double py, double pz, Photon target) {
  if (!is_probability(px) || !is_probability(py) || !is_probability(pz)) {
    throw std::invalid_argument("pauli_channel: probabilities must lie in [0,1]");
  }
  const double p_id = 1.0 - px - py - pz;
  if (p_id < -kIdentityTol) {
    throw std::invalid_argument("pauli_channel: px+py+pz exceeds 1");
  }
  std::vector<Matrix> ops;
  ops.push_back(std::sqrt(std::max(p_id, 0.0)) * Matrix::Identity(4, 4));
  ops.push_back(std::sqrt(px) * on_photon(pauli_x(), target));
  ops.push_back(std::sqrt(py) * on_photon(pauli_y(), target));
  ops.push_back(std::sqrt(pz) * on_photon(pauli_z(), target));
  return KrausChannel(std::move(ops));
}

ProductDephasing product_dephase(const DensityMatrix& rho_p) {
  if (rho_p.dim() != 4) throw std::invalid_argument("product_dephase: expected a 4x4 state");
  // Basis order HH, HV, VH, VV.
  ProductDiagonalParams params;
  params.hh = rho_p(0, 0).real();
  params.hv = rho_p(1, 1).real();
  params.vh = rho_p(2, 2).real();
  params.vv = rho_p(3, 3).real();
  Matrix d = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) d(i, i) = rho_p(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
  return {params, DensityMatrix(std::move(d))};
}

KrausChannel spatial_dephasing(double lambda) {
  if (!is_probability(lambda)) {
    throw std::invalid_argument("spatial_dephasing: lambda must lie in [0,1]");
  }
  Matrix upper = Matrix::Zero(4, 4);
  Matrix lower = Matrix::Zero(4, 4);
  upper(0, 0) = 1.0;
  lower(3, 3) = 1.0;
  // The projectors leave |a1b2>, |a2b1> unpopulated; complete the set so the
  // channel is trace preserving on the whole 4-level space.
  Matrix cross = Matrix::Zero(4, 4);
  cross(1, 1) = 1.0;
  cross(2, 2) = 1.0;
  const double s = std::sqrt(lambda);
  return KrausChannel({std::sqrt(1.0 - lambda) * Matrix::Identity(4, 4), s * upper, s * lower,
                       s * cross});
}

KrausChannel lift_polarization_channel(const KrausChannel& ch) { return lift(ch, true); }

KrausChannel lift_spatial_channel(const KrausChannel& ch) { return lift(ch, false); }

}  // namespace depp
