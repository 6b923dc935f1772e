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

#include "bds/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bds {

namespace {

constexpr std::int64_t kSeriesCutoff = 1000;
constexpr double kBoundaryTheta = 1e-9;

void require_positive(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
}

void require_non_negative(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("N must be >= 0");
}

void require_thirds(std::int64_t n) {
  if (n < 0 || n % 3 != 0) {
    throw std::invalid_argument("ordered parity checks need N divisible by 3, got " +
                                std::to_string(n));
  }
}

double dn(std::int64_t n) { return static_cast<double>(n); }

// sum_{k=0}^{N-1} C(N-1, k) 2^-k / (k+1)^2, the terminating 3F2 series with
// the sign of (1-N)_k (-1/2)^k absorbed.
double g_series(std::int64_t n) {
  double term = 1.0;
  double sum = 1.0;
  for (std::int64_t k = 0; k + 1 < n; ++k) {
    const double kk = dn(k);
    term *= (dn(n - 1) - kk) / (kk + 1.0) * 0.5 * ((kk + 1.0) * (kk + 1.0)) /
            ((kk + 2.0) * (kk + 2.0));
    sum += term;
  }
  return sum;
}

// E[1/Y; Y >= 1], Y ~ Bin(N, 1/3), from log-space pmf terms.
double inverse_moment_binomial(std::int64_t n) {
  const double log_third = std::log(1.0 / 3.0);
  const double log_two_thirds = std::log(2.0 / 3.0);
  const double lg_n1 = std::lgamma(dn(n) + 1.0);
  double sum = 0.0;
  for (std::int64_t y = 1; y <= n; ++y) {
    const double log_pmf = lg_n1 - std::lgamma(dn(y) + 1.0) -
                           std::lgamma(dn(n - y) + 1.0) + dn(y) * log_third +
                           dn(n - y) * log_two_thirds;
    sum += std::exp(log_pmf) / dn(y);
  }
  return sum;
}

}  // namespace

double hs_loss(const Vec4& theta_hat, const Vec4& theta) {
  return (theta_hat - theta).squaredNorm();
}

double infidelity_loss(const Vec4& theta_hat, const Vec4& theta) {
  if ((theta_hat.array() < -kPhysicalTolerance).any() ||
      (theta.array() < -kPhysicalTolerance).any()) {
    throw std::invalid_argument("infidelity needs non-negative weights");
  }
  const double overlap =
      (theta_hat.cwiseMax(0.0).array() * theta.cwiseMax(0.0).array()).sqrt().sum();
  return std::clamp(1.0 - overlap * overlap, 0.0, 1.0);
}

std::pair<double, double> fidelity_bounds(double hs_distance) {
  if (!(hs_distance >= 0.0)) {
    throw std::invalid_argument("HS distance must be non-negative");
  }
  const double root = std::max(0.0, 1.0 - std::sqrt(hs_distance));
  return {root * root, 1.0 - hs_distance / 2.0};
}

Eigen::Matrix3d qfi_matrix(const Vec4& theta) {
  // d theta_i / d t_a = M(a, i) / 4.
  const Mat34& m = theta_to_t_matrix();
  Eigen::Matrix3d f = Eigen::Matrix3d::Zero();
  for (int i = 0; i < 4; ++i) {
    if (theta(i) <= 0.0) continue;
    const Vec3 d = m.col(i) / 4.0;
    f += d * d.transpose() / theta(i);
  }
  return f;
}

double qcrb_bound(const Vec4& theta, std::int64_t n) {
  require_positive(n);
  // tr(J F^-1 J^T) / N with J = d theta / d t = M^T / 4.
  if (theta.minCoeff() > kBoundaryTheta) {
    const Eigen::Matrix<double, 4, 3> j = theta_to_t_matrix().transpose() / 4.0;
    const Eigen::Matrix3d f_inv = qfi_matrix(theta).ldlt().solve(Eigen::Matrix3d::Identity());
    return (j * f_inv * j.transpose()).trace() / dn(n);
  }
  // F is singular on the boundary; use the continuous extension
  // J F^-1 J^T -> diag(theta) - theta theta^T.
  return (1.0 - theta.squaredNorm()) / dn(n);
}

double risk_bsm_di(const Vec4& theta, std::int64_t n) {
  require_positive(n);
  return (1.0 - theta.squaredNorm()) / dn(n);
}

double avg_risk_bsm_di(std::int64_t n) {
  require_positive(n);
  return 3.0 / (5.0 * dn(n));
}

double risk_bsm_bme(const Vec4& theta, std::int64_t n) {
  require_non_negative(n);
  const double s = theta.squaredNorm();
  const double d = dn(n) + 4.0;
  return (dn(n) * (1.0 - s) + 4.0 * (4.0 * s - 1.0)) / (d * d);
}

double avg_risk_bsm_bme(std::int64_t n) {
  require_non_negative(n);
  return 3.0 / (5.0 * (dn(n) + 4.0));
}

double g_hyp(std::int64_t n) {
  require_positive(n);
  if (n <= kSeriesCutoff) return g_series(n);
  // (2/3)^N underflows long before g overflows; go through the moment.
  const double log_g = std::log(inverse_moment_binomial(n)) + std::log(2.0) -
                       std::log(dn(n)) - dn(n) * std::log(2.0 / 3.0);
  return std::exp(log_g);
}

double parity_inverse_moment(std::int64_t n) {
  require_non_negative(n);
  if (n == 0) return 0.0;
  if (n <= kSeriesCutoff) {
    return std::pow(2.0 / 3.0, dn(n)) * dn(n) / 2.0 * g_series(n);
  }
  return inverse_moment_binomial(n);
}

double risk_parity_random_di(const Vec4& theta, std::int64_t n) {
  require_non_negative(n);
  const double s = theta.squaredNorm();
  const double none = std::pow(2.0 / 3.0, dn(n));
  return (1.0 - s) * parity_inverse_moment(n) + none * (s - 0.25);
}

double avg_risk_parity_random_di(std::int64_t n) {
  require_non_negative(n);
  // E[sum theta^2] = 2/5 under the uniform prior.
  return 0.6 * parity_inverse_moment(n) + 0.15 * std::pow(2.0 / 3.0, dn(n));
}

double risk_parity_ordered_di(const Vec4& theta, std::int64_t n) {
  require_thirds(n);
  require_positive(n);
  return 3.0 * (1.0 - theta.squaredNorm()) / dn(n);
}

double avg_risk_parity_ordered_di(std::int64_t n) {
  require_thirds(n);
  require_positive(n);
  return 9.0 / (5.0 * dn(n));
}

double bme_parity_pointwise(const Vec4& theta, std::int64_t n) {
  require_thirds(n);
  const double per_axis = dn(n) / 3.0;
  const double d = per_axis + 2.0;
  return (per_axis - 1.0 + (4.0 - per_axis) * theta.squaredNorm()) / (d * d);
}

double bme_parity_upper_bound(std::int64_t n) {
  require_thirds(n);
  const double d = dn(n) / 3.0 + 2.0;
  return (dn(n) + 3.0) / (5.0 * d * d);
}

}  // namespace bds
