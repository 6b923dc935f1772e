// Copyright 2026 The bdsest Authors
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

#include "bds/states.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bds {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::array<Mat2c, 4> make_paulis() {
  const Complex i(0.0, 1.0);
  std::array<Mat2c, 4> s;
  s[0] << 1, 0, 0, 1;
  s[1] << 0, 1, 1, 0;
  s[2] << 0, -i, i, 0;
  s[3] << 1, 0, 0, -1;
  return s;
}

Mat4c kron(const Mat2c& a, const Mat2c& b) {
  Mat4c out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
    }
  }
  return out;
}

}  // namespace

const Mat2c& pauli(int index) {
  static const std::array<Mat2c, 4> kPaulis = make_paulis();
  if (index < 0 || index > 3) {
    throw std::out_of_range("pauli index must be in 0..3");
  }
  return kPaulis[static_cast<std::size_t>(index)];
}

Mat4c pauli_pair(int i, int j) { return kron(pauli(i), pauli(j)); }

const Mat4c& bell_vectors() {
  static const Mat4c kBell = [] {
    Mat4c b = Mat4c::Zero();
    // Phi+ = (|00> + |11>)/sqrt2, Phi- = (|00> - |11>)/sqrt2,
    // Psi+ = (|01> + |10>)/sqrt2, Psi- = (|01> - |10>)/sqrt2.
    b(0, 0) = kInvSqrt2;
    b(3, 0) = kInvSqrt2;
    b(0, 1) = kInvSqrt2;
    b(3, 1) = -kInvSqrt2;
    b(1, 2) = kInvSqrt2;
    b(2, 2) = kInvSqrt2;
    b(1, 3) = kInvSqrt2;
    b(2, 3) = -kInvSqrt2;
    return b;
  }();
  return kBell;
}

const Mat34& theta_to_t_matrix() {
  static const Mat34 kM = [] {
    Mat34 m;
    m << 1, -1, 1, -1,
        -1, 1, 1, -1,
         1, 1, -1, -1;
    return m;
  }();
  return kM;
}

Vec3 theta_to_t(const Vec4& theta) {
  if (!(std::abs(theta.sum() - 1.0) <= kPhysicalTolerance)) {
    throw std::invalid_argument("theta must sum to one, got sum " +
                                std::to_string(theta.sum()));
  }
  return theta_to_t_matrix() * theta;
}

Vec4 t_to_theta(const Vec3& t) {
  return (theta_to_t_matrix().transpose() * t + Vec4::Ones()) / 4.0;
}

bool is_physical(const Vec3& t) {
  return (t_to_theta(t).array() >= -kPhysicalTolerance).all();
}

bool is_separable(const Vec3& t) {
  if (!is_physical(t)) {
    throw std::invalid_argument("is_separable requires a physical t");
  }
  return t.cwiseAbs().sum() <= 1.0 + kSumTolerance;
}

BellDiagonalState::BellDiagonalState(const Vec4& theta)
    : theta_(theta), t_(theta_to_t_matrix() * theta) {}

BellDiagonalState BellDiagonalState::from_theta(const Vec4& theta) {
  if (!theta.allFinite()) {
    throw std::invalid_argument("theta has non-finite entries");
  }
  if (std::abs(theta.sum() - 1.0) > kPhysicalTolerance) {
    throw std::invalid_argument("theta must sum to one, got sum " +
                                std::to_string(theta.sum()));
  }
  if ((theta.array() < -kPhysicalTolerance).any()) {
    throw std::invalid_argument("theta has a negative component");
  }
  Vec4 clamped = theta.cwiseMax(0.0);
  clamped /= clamped.sum();
  return BellDiagonalState(clamped);
}

BellDiagonalState BellDiagonalState::from_t(const Vec3& t) {
  if (!is_physical(t)) {
    throw std::invalid_argument("t lies outside the physical tetrahedron");
  }
  return from_theta(t_to_theta(t));
}

BellDiagonalState BellDiagonalState::maximally_mixed() {
  return BellDiagonalState(Vec4::Constant(0.25));
}

BellDiagonalState BellDiagonalState::bell(int index) {
  if (index < 0 || index > 3) {
    throw std::out_of_range("Bell state index must be in 0..3");
  }
  return BellDiagonalState(Vec4::Unit(index));
}

DensityMatrix4::DensityMatrix4(const Mat4c& entries) : entries_(entries) {
  if (!entries.allFinite()) {
    throw std::invalid_argument("density matrix has non-finite entries");
  }
  const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kMatrixTolerance) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  const Complex tr = entries.trace();
  if (std::abs(tr.real() - 1.0) > kMatrixTolerance ||
      std::abs(tr.imag()) > kMatrixTolerance) {
    throw std::invalid_argument("density matrix must have unit trace");
  }
}

Mat4c DensityMatrix4::in_bell_basis() const {
  return bell_vectors().adjoint() * entries_ * bell_vectors();
}

Vec4 DensityMatrix4::bell_diagonal() const {
  return in_bell_basis().diagonal().real();
}

PauliChannelSpec::PauliChannelSpec(const Eigen::Matrix4d& probabilities)
    : p_(probabilities) {
  if (!p_.allFinite() || (p_.array() < 0.0).any()) {
    throw std::invalid_argument("Pauli channel probabilities must be >= 0");
  }
  if (std::abs(p_.sum() - 1.0) > kSumTolerance) {
    throw std::invalid_argument("Pauli channel probabilities must sum to one");
  }
}

PauliChannelSpec PauliChannelSpec::identity() {
  Eigen::Matrix4d p = Eigen::Matrix4d::Zero();
  p(0, 0) = 1.0;
  return PauliChannelSpec(p);
}

PauliChannelSpec PauliChannelSpec::depolarizing(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("depolarizing strength must be in [0, 1]");
  }
  Eigen::Matrix4d probs = Eigen::Matrix4d::Constant(p / 16.0);
  probs(0, 0) += 1.0 - p;
  return PauliChannelSpec(probs);
}

DensityMatrix4 density_matrix(const BellDiagonalState& state) {
  Mat4c rho = Mat4c::Identity();
  for (int i = 0; i < 3; ++i) {
    rho += state.t()(i) * pauli_pair(i + 1, i + 1);
  }
  rho /= 4.0;
  // Strip rounding noise so the result passes the strict validation.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix4(rho);
}

DensityMatrix4 twirl_matrix(const DensityMatrix4& rho) {
  Mat4c acc = Mat4c::Zero();
  for (int i = 0; i < 4; ++i) {
    const Mat4c u = pauli_pair(i, i);
    acc += u * rho.matrix() * u;
  }
  acc /= 4.0;
  acc = 0.5 * (acc + acc.adjoint()).eval();
  return DensityMatrix4(acc);
}

BellDiagonalState twirl(const DensityMatrix4& rho) {
  return BellDiagonalState::from_theta(twirl_matrix(rho).bell_diagonal());
}

DensityMatrix4 apply_pauli_channel(const DensityMatrix4& rho,
                                   const PauliChannelSpec& channel) {
  Mat4c acc = Mat4c::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double p = channel.probabilities()(i, j);
      if (p == 0.0) continue;
      const Mat4c u = pauli_pair(i, j);
      acc += p * (u * rho.matrix() * u);
    }
  }
  acc = 0.5 * (acc + acc.adjoint()).eval();
  return DensityMatrix4(acc);
}

Eigen::Matrix4d channel_theta_map(const PauliChannelSpec& channel) {
  // Each sigma_i (x) sigma_j permutes the Bell states up to phase, so the
  // induced map on theta is a mixture of permutation matrices.
  Eigen::Matrix4d out = Eigen::Matrix4d::Zero();
  const Mat4c& bell = bell_vectors();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double p = channel.probabilities()(i, j);
      if (p == 0.0) continue;
      const Mat4c overlaps = bell.adjoint() * pauli_pair(i, j) * bell;
      out += p * overlaps.cwiseAbs2();
    }
  }
  return out;
}

}  // namespace bds
