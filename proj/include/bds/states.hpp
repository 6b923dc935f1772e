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

#ifndef BDS_STATES_HPP
#define BDS_STATES_HPP

#include <Eigen/Dense>
#include <complex>

namespace bds {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec4c = Eigen::Vector4cd;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Mat34 = Eigen::Matrix<double, 3, 4>;

/// Allowed deviation of sum(theta) from one.
inline constexpr double kSumTolerance = 1e-12;
/// Componentwise slack on theta before a state counts as unphysical.
inline constexpr double kPhysicalTolerance = 1e-9;
/// Hermiticity and unit-trace tolerance for dense density matrices.
inline constexpr double kMatrixTolerance = 1e-12;

enum class Axis { x = 0, y = 1, z = 2 };

/// Pauli matrix sigma_i with sigma_0 = identity, sigma_1..3 = x, y, z.
const Mat2c& pauli(int index);

/// sigma_i (x) sigma_j on two qubits, qubit A is the high-order factor.
Mat4c pauli_pair(int i, int j);

/// Columns are the Bell states Phi+, Phi-, Psi+, Psi- in the computational
/// basis |00>, |01>, |10>, |11>.
const Mat4c& bell_vectors();

/// The 3x4 sign matrix mapping the mixture weights theta to the correlation
/// vector t (t = M theta). Its transpose divided by four inverts it on the
/// simplex: theta = (M^T t + 1) / 4.
const Mat34& theta_to_t_matrix();

/// Throws std::invalid_argument unless |sum(theta) - 1| <= kPhysicalTolerance.
Vec3 theta_to_t(const Vec4& theta);

/// Inverse of theta_to_t; the result may have negative entries.
Vec4 t_to_theta(const Vec3& t);

bool is_physical(const Vec3& t);

/// Octahedron test |t1| + |t2| + |t3| <= 1 (boundary inclusive).
/// Throws std::invalid_argument for unphysical t.
bool is_separable(const Vec3& t);

/// A two-qubit state diagonal in the Bell basis. Stores the simplex
/// coordinates theta; the correlation vector t is derived on construction.
class BellDiagonalState {
 public:
  /// Accepts theta whose sum is within kPhysicalTolerance of one and whose
  /// entries are >= -kPhysicalTolerance. Tiny negatives are clamped and the
  /// vector is renormalised.
  static BellDiagonalState from_theta(const Vec4& theta);
  static BellDiagonalState from_t(const Vec3& t);
  static BellDiagonalState maximally_mixed();
  /// Pure Bell state, index 0..3 for Phi+, Phi-, Psi+, Psi-.
  static BellDiagonalState bell(int index);

  const Vec4& theta() const { return theta_; }
  const Vec3& t() const { return t_; }
  double purity() const { return theta_.squaredNorm(); }

  bool operator==(const BellDiagonalState& other) const {
    return theta_ == other.theta_;
  }

 private:
  explicit BellDiagonalState(const Vec4& theta);

  Vec4 theta_;
  Vec3 t_;
};

/// Dense 4x4 two-qubit density matrix, validated for Hermiticity and unit
/// trace on construction.
class DensityMatrix4 {
 public:
  explicit DensityMatrix4(const Mat4c& entries);

  const Mat4c& matrix() const { return entries_; }

  /// <Psi_k| rho |Psi_k> for the four Bell states.
  Vec4 bell_diagonal() const;
  /// Entries of rho expressed in the Bell basis.
  Mat4c in_bell_basis() const;

 private:
  Mat4c entries_;
};

/// Probability matrix p_ij of a two-qubit Pauli channel, indices 0..3.
class PauliChannelSpec {
 public:
  explicit PauliChannelSpec(const Eigen::Matrix4d& probabilities);

  static PauliChannelSpec identity();
  static PauliChannelSpec depolarizing(double p);

  const Eigen::Matrix4d& probabilities() const { return p_; }

 private:
  Eigen::Matrix4d p_;
};

/// rho(t) = (I + sum_i t_i sigma_i (x) sigma_i) / 4.
DensityMatrix4 density_matrix(const BellDiagonalState& state);

/// Average of rho over conjugation by {I, XX, YY, ZZ}.
DensityMatrix4 twirl_matrix(const DensityMatrix4& rho);
BellDiagonalState twirl(const DensityMatrix4& rho);

DensityMatrix4 apply_pauli_channel(const DensityMatrix4& rho,
                                   const PauliChannelSpec& channel);

/// Column-stochastic map T with theta_out = T theta_in for Bell diagonal
/// inputs to the channel.
Eigen::Matrix4d channel_theta_map(const PauliChannelSpec& channel);

}  // namespace bds

#endif  // BDS_STATES_HPP
