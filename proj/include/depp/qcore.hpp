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

#ifndef DEPP_QCORE_HPP
#define DEPP_QCORE_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace depp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerance for validity checks (Hermiticity, trace, positivity, unitarity).
inline constexpr double kValidityTol = 1e-10;
/// Tolerance for algebraic identities on exact permutation/tensor arithmetic.
inline constexpr double kIdentityTol = 1e-12;

/// A normalized pure state. Construction normalizes the amplitudes and
/// rejects zero-norm or non-finite input.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes);

  /// Computational basis vector |index> of the given dimension.
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

 private:
  Vector amps_;
};

/// A valid density matrix: Hermitian, unit trace, positive semidefinite,
/// all within kValidityTol. Tiny negative diagonal noise (>= -kValidityTol)
/// is clamped to zero on construction; anything worse throws.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  Matrix m_;
};

/// Trace-preserving set of Kraus operators: sum K^dag K = I within kValidityTol.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Matrix> operators);

  static KrausChannel identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& operators() const { return ops_; }

 private:
  std::vector<Matrix> ops_;
  std::size_t dim_;
};

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

Matrix kron(const Matrix& a, const Matrix& b);
StateVector tensor_product(const StateVector& a, const StateVector& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// <psi|rho|psi>, clamped to [0, 1]. Throws std::invalid_argument on dimension mismatch.
double fidelity_pure(const DensityMatrix& rho, const StateVector& psi);

/// Reduced state over the subsystems listed in `keep` (any order; the result
/// keeps them in ascending subsystem order). `dims` lists every subsystem
/// dimension; their product must equal rho.dim().
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel);

/// Conjugation rho -> U rho U^dag. U must be unitary.
DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& unitary);

bool is_unitary(const Matrix& m, double tol = kValidityTol);
bool is_density(const Matrix& m, double tol = kValidityTol);
bool is_permutation(const Matrix& m, double tol = kIdentityTol);

/// Amplitudes in HH, HV, VH, VV order.
StateVector bell_state(BellState kind);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// Largest entrywise modulus of a - b. Dimensions must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace depp

#endif  // DEPP_QCORE_HPP
