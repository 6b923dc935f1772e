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

#ifndef BDS_DISTINGUISH_HPP
#define BDS_DISTINGUISH_HPP

#include <vector>

#include "bds/states.hpp"

namespace bds {

inline constexpr double kSignTolerance = 1e-12;

/// Optimal two-outcome discrimination of a pair of Bell diagonal states.
/// Bell-state labels are 1-based (1 = Phi+, ..., 4 = Psi-). Indices where
/// rho_i - phi_i <= 0 (including ties) go to the negative outcome.
struct DiscriminationResult {
  double success_bound = 0.5;
  std::vector<int> positive_indices;
  std::vector<int> negative_indices;
  bool locc_optimal = true;
};

/// (1 + ||rho - phi||_1 / 2) / 2.
double helstrom_bound(const BellDiagonalState& rho, const BellDiagonalState& phi);

DiscriminationResult optimal_povm(const BellDiagonalState& rho,
                                  const BellDiagonalState& phi);

/// True when at most two Bell weights strictly increase and at most two
/// strictly decrease, i.e. the Helstrom measurement is a parity check.
bool is_locc_optimal(const BellDiagonalState& rho, const BellDiagonalState& phi);

/// Sum of Bell projectors for the given 1-based labels.
Mat4c bell_projector_sum(const std::vector<int>& labels);

/// Equal-prior success probability of guessing rho on outcome `guess_rho`
/// and phi on its complement, evaluated with Born's rule on dense matrices.
double povm_success_probability(const BellDiagonalState& rho,
                                const BellDiagonalState& phi,
                                const Mat4c& guess_rho);

}  // namespace bds

#endif  // BDS_DISTINGUISH_HPP
