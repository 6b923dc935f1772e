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

#include "bds/distinguish.hpp"

#include <stdexcept>

namespace bds {

double helstrom_bound(const BellDiagonalState& rho, const BellDiagonalState& phi) {
  const double trace_norm = (rho.theta() - phi.theta()).cwiseAbs().sum();
  return 0.5 * (1.0 + 0.5 * trace_norm);
}

DiscriminationResult optimal_povm(const BellDiagonalState& rho,
                                  const BellDiagonalState& phi) {
  DiscriminationResult result;
  const Vec4 diff = rho.theta() - phi.theta();
  for (int i = 0; i < 4; ++i) {
    if (diff(i) > kSignTolerance) {
      result.positive_indices.push_back(i + 1);
    } else {
      result.negative_indices.push_back(i + 1);
    }
  }
  result.success_bound = helstrom_bound(rho, phi);
  result.locc_optimal = is_locc_optimal(rho, phi);
  return result;
}

bool is_locc_optimal(const BellDiagonalState& rho, const BellDiagonalState& phi) {
  const Vec4 diff = rho.theta() - phi.theta();
  const auto positive = (diff.array() > kSignTolerance).count();
  const auto negative = (diff.array() < -kSignTolerance).count();
  return positive <= 2 && negative <= 2;
}

Mat4c bell_projector_sum(const std::vector<int>& labels) {
  Mat4c out = Mat4c::Zero();
  for (int label : labels) {
    if (label < 1 || label > 4) {
      throw std::out_of_range("Bell label must be in 1..4");
    }
    const Vec4c v = bell_vectors().col(label - 1);
    out += v * v.adjoint();
  }
  return out;
}

double povm_success_probability(const BellDiagonalState& rho,
                                const BellDiagonalState& phi,
                                const Mat4c& guess_rho) {
  const Mat4c guess_phi = Mat4c::Identity() - guess_rho;
  const Complex p_rho = (guess_rho * density_matrix(rho).matrix()).trace();
  const Complex p_phi = (guess_phi * density_matrix(phi).matrix()).trace();
  return 0.5 * (p_rho.real() + p_phi.real());
}

}  // namespace bds
