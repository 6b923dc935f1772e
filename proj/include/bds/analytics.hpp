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

#ifndef BDS_ANALYTICS_HPP
#define BDS_ANALYTICS_HPP

#include <cstdint>
#include <string>
#include <utility>

#include "bds/states.hpp"

namespace bds {

/// Closed-form risk value tagged with the formula it came from.
struct RiskFormulaResult {
  double value = 0.0;
  std::string formula_id;
  bool upper_bound = false;
};

/// Squared Hilbert-Schmidt distance between two Bell diagonal states.
double hs_loss(const Vec4& theta_hat, const Vec4& theta);

/// 1 - (sum_i sqrt(theta_hat_i theta_i))^2. Throws on negative components.
double infidelity_loss(const Vec4& theta_hat, const Vec4& theta);

/// Fidelity bounds (max(0, 1 - sqrt L)^2, 1 - L/2) from the HS distance L.
std::pair<double, double> fidelity_bounds(double hs_distance);

/// Quantum Fisher information of the t parametrisation, summed over the
/// support of theta only.
Eigen::Matrix3d qfi_matrix(const Vec4& theta);

/// Quantum Cramer-Rao floor on the HS risk of unbiased estimators,
/// tr(J F^-1 J^T) / N with J = d theta / d t. On the simplex boundary, where F
/// is singular, the continuous extension (1 - sum theta^2) / N is returned.
double qcrb_bound(const Vec4& theta, std::int64_t n);

// Bell-basis measurements.
double risk_bsm_di(const Vec4& theta, std::int64_t n);
double avg_risk_bsm_di(std::int64_t n);
double risk_bsm_bme(const Vec4& theta, std::int64_t n);
double avg_risk_bsm_bme(std::int64_t n);

/// 3F2(1, 1, 1-N; 2, 2; -1/2) for N >= 1. Grows like (3/2)^N and is +inf
/// past N ~ 1750; use parity_inverse_moment for large N.
double g_hyp(std::int64_t n);

/// E[1/Y; Y >= 1] for Y ~ Binomial(N, 1/3), which equals
/// (2/3)^N (N/2) g_hyp(N). Stable for large N.
double parity_inverse_moment(std::int64_t n);

// Randomly chosen parity checks, direct inversion.
double risk_parity_random_di(const Vec4& theta, std::int64_t n);
/// Prior average of risk_parity_random_di under the uniform prior:
/// (2/3)^N [(3N/10) g(N) + 3/20].
double avg_risk_parity_random_di(std::int64_t n);

// Ordered parity checks (N/3 per axis).
double risk_parity_ordered_di(const Vec4& theta, std::int64_t n);
double avg_risk_parity_ordered_di(std::int64_t n);

/// Risk of the cube-posterior mean t_i = (2 x_{i,0} - N/3) / (2 + N/3).
double bme_parity_pointwise(const Vec4& theta, std::int64_t n);
/// (N + 3) / (5 (N/3 + 2)^2), an upper bound on the average BME risk.
double bme_parity_upper_bound(std::int64_t n);

}  // namespace bds

#endif  // BDS_ANALYTICS_HPP
