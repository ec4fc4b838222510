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

#include "depp/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace depp {

namespace {

bool all_finite(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && max_abs_diff(m, m.adjoint()) <= tol;
}

double min_eigenvalue(const Matrix& m) {
  // Symmetrize first so round-off in the upper triangle is not ignored.
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) return -1.0;
  return solver.eigenvalues().minCoeff();
}

Eigen::Index checked_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

StateVector::StateVector(Vector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw std::invalid_argument("StateVector: dimension must be positive");
  if (!all_finite(amps_)) throw std::invalid_argument("StateVector: non-finite amplitude");
  const double norm = amps_.norm();
  if (norm == 0.0) throw std::invalid_argument("StateVector: zero vector cannot be normalized");
  amps_ /= norm;
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("StateVector::basis: index out of range");
  Vector v = Vector::Zero(checked_index(dim));
  v(checked_index(index)) = 1.0;
  return StateVector(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw std::invalid_argument("DensityMatrix: matrix must be square and non-empty");
  }
  if (!all_finite(m_)) throw std::invalid_argument("DensityMatrix: non-finite entry");
  if (!hermitian(m_, kValidityTol)) throw std::invalid_argument("DensityMatrix: not Hermitian");
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    double d = m_(i, i).real();
    if (d < 0.0) {
      if (d < -kValidityTol) {
        throw std::invalid_argument("DensityMatrix: negative diagonal entry " + std::to_string(d));
      }
      d = 0.0;
    }
    m_(i, i) = Complex(d, 0.0);
  }
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kValidityTol) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
  if (min_eigenvalue(m_) < -kValidityTol) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  const Vector& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("maximally_mixed: dimension must be positive");
  return DensityMatrix(Matrix::Identity(checked_index(dim), checked_index(dim)) /
                       static_cast<double>(dim));
}

KrausChannel::KrausChannel(std::vector<Matrix> operators) : ops_(std::move(operators)) {
  if (ops_.empty()) throw std::invalid_argument("KrausChannel: no operators");
  const Eigen::Index n = ops_.front().rows();
  if (n == 0) throw std::invalid_argument("KrausChannel: empty operator");
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& k : ops_) {
    if (k.rows() != n || k.cols() != n) {
      throw std::invalid_argument("KrausChannel: operators must share one square dimension");
    }
    if (!all_finite(k)) throw std::invalid_argument("KrausChannel: non-finite entry");
    sum += k.adjoint() * k;
  }
  if (max_abs_diff(sum, Matrix::Identity(n, n)) > kValidityTol) {
    throw std::invalid_argument("KrausChannel: operators are not trace preserving");
  }
  dim_ = static_cast<std::size_t>(n);
}

KrausChannel KrausChannel::identity(std::size_t dim) {
  return KrausChannel({Matrix::Identity(checked_index(dim), checked_index(dim))});
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  return StateVector(kron(a.amplitudes(), b.amplitudes()));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

double fidelity_pure(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.dim() != psi.dim()) throw std::invalid_argument("fidelity_pure: dimension mismatch");
  const Vector& v = psi.amplitudes();
  const Complex f = v.dot(rho.matrix() * v);
  return std::clamp(f.real(), 0.0, 1.0);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  if (dims.empty()) throw std::invalid_argument("partial_trace: no subsystems");
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("partial_trace: zero subsystem dimension");
    total *= d;
  }
  if (total != rho.dim()) {
    throw std::invalid_argument("partial_trace: subsystem dimensions do not match the state");
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) {
      throw std::invalid_argument("partial_trace: invalid or repeated subsystem index");
    }
    kept[k] = true;
  }

  // Strides of the full index, most significant subsystem first.
  const std::size_t n = dims.size();
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t s = n - 1; s > 0; --s) stride[s - 1] = stride[s] * dims[s];

  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
  for (std::size_t s = 0; s < n; ++s) (kept[s] ? kept_dim : traced_dim) *= dims[s];

  // Map (kept multi-index, traced multi-index) to the full index.
  auto full_index = [&](std::size_t k, std::size_t t) {
    std::size_t idx = 0;
    for (std::size_t s = n; s-- > 0;) {
      std::size_t digit;
      if (kept[s]) {
        digit = k % dims[s];
        k /= dims[s];
      } else {
        digit = t % dims[s];
        t /= dims[s];
      }
      idx += digit * stride[s];
    }
    return idx;
  };

  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(checked_index(kept_dim), checked_index(kept_dim));
  for (std::size_t i = 0; i < kept_dim; ++i) {
    for (std::size_t j = 0; j < kept_dim; ++j) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < traced_dim; ++t) {
        acc += m(checked_index(full_index(i, t)), checked_index(full_index(j, t)));
      }
      out(checked_index(i), checked_index(j)) = acc;
    }
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel) {
  if (rho.dim() != channel.dim()) throw std::invalid_argument("apply_channel: dimension mismatch");
  Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const auto& k : channel.operators()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix(std::move(out));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& unitary) {
  if (static_cast<std::size_t>(unitary.rows()) != rho.dim() || !is_unitary(unitary)) {
    throw std::invalid_argument("apply_unitary: operator is not a unitary of matching dimension");
  }
  return DensityMatrix(unitary * rho.matrix() * unitary.adjoint());
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() == 0 || m.rows() != m.cols() || !all_finite(m)) return false;
  return max_abs_diff(m.adjoint() * m, Matrix::Identity(m.rows(), m.cols())) <= tol;
}

bool is_density(const Matrix& m, double tol) {
  if (m.rows() == 0 || m.rows() != m.cols() || !all_finite(m)) return false;
  if (!hermitian(m, tol)) return false;
  if (std::abs(m.trace().real() - 1.0) > tol) return false;
  return min_eigenvalue(m) >= -tol;
}

bool is_permutation(const Matrix& m, double tol) {
  if (!is_unitary(m, tol)) return false;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (std::abs(z) > tol && std::abs(z - 1.0) > tol) return false;
  }
  return true;
}

StateVector bell_state(BellState kind) {
  Vector v = Vector::Zero(4);
  switch (kind) {
    case BellState::PhiPlus:
      v << 1.0, 0.0, 0.0, 1.0;
      break;
    case BellState::PhiMinus:
      v << 1.0, 0.0, 0.0, -1.0;
      break;
    case BellState::PsiPlus:
      v << 0.0, 1.0, 1.0, 0.0;
      break;
    case BellState::PsiMinus:
      v << 0.0, 1.0, -1.0, 0.0;
      break;
  }
  return StateVector(std::move(v));
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix pauli_y() {
  const Complex i(0.0, 1.0);
  Matrix m(2, 2);
  m << 0.0, -i, i, 0.0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace depp
