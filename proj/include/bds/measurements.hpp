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

#ifndef BDS_MEASUREMENTS_HPP
#define BDS_MEASUREMENTS_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bds/states.hpp"

namespace bds {

using Rng = std::mt19937_64;

enum class Strategy {
  bell,
  parity_ordered,
  parity_random,
  mub,
  pauli,
  haar,
  haar_separable,
};

inline constexpr std::array<Strategy, 7> kAllStrategies = {
    Strategy::bell, Strategy::parity_ordered, Strategy::parity_random,
    Strategy::mub,  Strategy::pauli,          Strategy::haar,
    Strategy::haar_separable,
};

std::string_view to_string(Strategy strategy);
/// Throws std::invalid_argument for unknown names.
Strategy parse_strategy(std::string_view name);

/// Shot counts must be a multiple of this so every basis is measured
/// equally often.
int shot_divisor(Strategy strategy);
/// True for plans that draw a fresh basis for every shot.
bool is_random_basis(Strategy strategy);
bool is_parity(Strategy strategy);

struct ProjectiveBasis {
  std::string label;
  Mat4c vectors;  // columns are the measurement vectors

  bool is_orthonormal(double tolerance = 1e-10) const;
};

ProjectiveBasis bell_basis();
ProjectiveBasis computational_basis();

/// Product eigenbasis of sigma_a (x) sigma_b with outcomes ordered
/// (+,+), (+,-), (-,+), (-,-).
ProjectiveBasis pauli_product_basis(Axis a, Axis b);

/// Five mutually unbiased bases: the zz, xx and yy product bases followed by
/// the entangled common eigenbases of {XY, YZ, ZX} and {YX, ZY, XZ}.
std::vector<ProjectiveBasis> mub_bases();

/// The nine product bases sigma_i (x) sigma_j, i, j in {x, y, z}, row-major.
std::vector<ProjectiveBasis> pauli_bases();

/// Haar-random unitary of the given dimension (Ginibre + QR with the
/// diagonal phase of R folded back into Q).
Eigen::MatrixXcd haar_unitary(Rng& rng, int dim);

/// Columns of a Haar U(4), or of U(2) (x) V(2) when separable.
ProjectiveBasis haar_basis(Rng& rng, bool separable);

struct ParityProbs {
  double even;
  double odd;
};

ParityProbs parity_check_probs(const BellDiagonalState& state, Axis axis);

/// Born probabilities <v_k| rho |v_k> for the four basis vectors.
Vec4 basis_probs(const BellDiagonalState& state, const ProjectiveBasis& basis);

/// Row k holds w_k with p_k(t) = (1 + w_k . t) / 4 for any Bell diagonal
/// state; w_k,i = <v_k| sigma_i (x) sigma_i |v_k>.
Eigen::Matrix<double, 4, 3> born_response(const ProjectiveBasis& basis);

struct MeasurementPlan {
  Strategy strategy = Strategy::bell;
  std::int64_t shots = 0;

  /// Throws std::invalid_argument on negative or non-divisible shot counts.
  void validate() const;
};

struct BasisCounts {
  ProjectiveBasis basis;
  std::array<std::int64_t, 4> counts{};

  std::int64_t total() const {
    return counts[0] + counts[1] + counts[2] + counts[3];
  }
};

/// Parity tally for one axis: even is x_{i,0}, odd is x_{i,1}.
struct ParityCounts {
  Axis axis = Axis::x;
  std::int64_t even = 0;
  std::int64_t odd = 0;

  std::int64_t total() const { return even + odd; }
};

/// Measurement data. Fixed-basis plans store aggregated counts; random-basis
/// plans store one entry per shot.
struct OutcomeRecord {
  Strategy strategy = Strategy::bell;
  std::int64_t total_shots = 0;
  std::vector<BasisCounts> bases;
  std::vector<ParityCounts> parity;

  /// Counts are non-negative and add up to total_shots.
  void validate() const;
  /// Per-axis totals (index 0, 1, 2 for x, y, z).
  std::array<ParityCounts, 3> parity_totals() const;
};

OutcomeRecord sample_outcomes(const BellDiagonalState& state,
                              const MeasurementPlan& plan, Rng& rng);
OutcomeRecord sample_outcomes(const BellDiagonalState& state,
                              const MeasurementPlan& plan, std::uint64_t seed);

/// Multinomial draw of n trials with the given probabilities.
std::array<std::int64_t, 4> sample_multinomial(const Vec4& probs,
                                               std::int64_t n, Rng& rng);

}  // namespace bds

#endif  // BDS_MEASUREMENTS_HPP
