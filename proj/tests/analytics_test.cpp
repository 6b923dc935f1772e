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

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace bds {
namespace {

const Vec4 kMixed = Vec4::Constant(0.25);
const Vec4 kVertex(1, 0, 0, 0);

TEST(Losses, HilbertSchmidt) {
  EXPECT_EQ(hs_loss(kMixed, kMixed), 0.0);
  EXPECT_NEAR(hs_loss(kVertex, kMixed), 0.75, 1e-15);
  const Vec4 a(0.1, 0.2, 0.3, 0.4);
  EXPECT_EQ(hs_loss(a, kMixed), hs_loss(kMixed, a));
}

TEST(Losses, Infidelity) {
  EXPECT_NEAR(infidelity_loss(kMixed, kMixed), 0.0, 1e-15);
  EXPECT_NEAR(infidelity_loss(kVertex, Vec4(0, 1, 0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(infidelity_loss(kVertex, kMixed), 0.75, 1e-15);
  EXPECT_THROW(infidelity_loss(Vec4(0.5, 0.5, 0.5, -0.5), kMixed), std::invalid_argument);
}

TEST(Losses, FidelityBounds) {
  EXPECT_EQ(fidelity_bounds(0.0), std::make_pair(1.0, 1.0));
  EXPECT_EQ(fidelity_bounds(1.0), std::make_pair(0.0, 0.5));
  EXPECT_EQ(fidelity_bounds(0.25), std::make_pair(0.25, 0.875));
}

TEST(Qcrb, Examples) {
  EXPECT_NEAR(qcrb_bound(kMixed, 100), 0.0075, 1e-15);
  EXPECT_NEAR(qcrb_bound(kVertex, 7), 0.0, 1e-15);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 200; ++k) {
    const Vec4 th = oracle::dirichlet(rng);
    const int n = 1 + k;
    EXPECT_NEAR(qcrb_bound(th, n), risk_bsm_di(th, n), 1e-12);
  }
}

TEST(Qfi, InverseCovarianceIdentity) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    const Vec4 th = oracle::dirichlet(rng);
    const Eigen::Matrix3d f = qfi_matrix(th);
    // Cramer-Rao covariance of t for a single Bell measurement.
    Eigen::Matrix4d cov_theta = th.asDiagonal();
    cov_theta -= th * th.transpose();
    const Eigen::Matrix<double, 3, 4> m = theta_to_t_matrix();
    const Eigen::Matrix3d cov_t = m * cov_theta * m.transpose();
    EXPECT_LT((f * cov_t - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(BellRisk, Examples) {
  EXPECT_NEAR(risk_bsm_di(kMixed, 10), 0.075, 1e-15);
  EXPECT_NEAR(avg_risk_bsm_di(10), 0.06, 1e-15);
  EXPECT_NEAR(risk_bsm_bme(kMixed, 0), 0.0, 1e-15);
  EXPECT_NEAR(risk_bsm_bme(kVertex, 0), 0.75, 1e-15);
  EXPECT_NEAR(avg_risk_bsm_bme(16), 0.03, 1e-15);
  EXPECT_THROW(risk_bsm_di(kMixed, 0), std::invalid_argument);
}

TEST(BellRisk, ExhaustiveEnumeration) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const Vec4 th = oracle::dirichlet(rng);
    for (int n = 1; n <= 6; ++n) {
      EXPECT_NEAR(risk_bsm_di(th, n), oracle::bell_risk(th, n, 0.0), 1e-12);
      EXPECT_NEAR(risk_bsm_bme(th, n), oracle::bell_risk(th, n, 1.0), 1e-12);
    }
  }
}

TEST(BellRisk, AveragesAreDirichletMeans) {
  // E[sum theta^2] = 4 * 2 / (4 * 5) = 2/5 under Dirichlet(1,1,1,1).
  for (int n = 1; n < 50; ++n) {
    EXPECT_NEAR(avg_risk_bsm_di(n), (1.0 - 0.4) / n, 1e-15);
    const double d = n + 4.0;
    EXPECT_NEAR(avg_risk_bsm_bme(n), (n * 0.6 + 4.0 * (1.6 - 1.0)) / (d * d), 1e-15);
  }
}

TEST(GHyp, SmallValues) {
  EXPECT_EQ(g_hyp(1), 1.0);
  EXPECT_EQ(g_hyp(2), 9.0 / 8.0);
}

TEST(GHyp, BinomialIdentity) {
  for (int n = 1; n <= 20; ++n) {
    double lhs = 0.0;
    for (int y = 1; y <= n; ++y) lhs += oracle::binomial_pmf(n, y, 1.0 / 3.0) / y;
    EXPECT_NEAR(lhs, std::pow(2.0 / 3.0, n) * n / 2.0 * g_hyp(n), 1e-12) << n;
    EXPECT_NEAR(lhs, parity_inverse_moment(n), 1e-12) << n;
  }
}

TEST(GHyp, LargeNBranchesAgree) {
  // Crossing the series cutoff must be smooth.
  const double below = parity_inverse_moment(1000);
  const double above = parity_inverse_moment(1001);
  EXPECT_NEAR(below * 1000, above * 1001, 0.01);
  // g grows like (3/2)^N and leaves double range near N = 1750.
  EXPECT_TRUE(std::isfinite(g_hyp(1500)));
  EXPECT_TRUE(std::isinf(g_hyp(5000)));
  EXPECT_NEAR(parity_inverse_moment(30000) * 10000, 1.0, 1e-3);
}

TEST(RandomParity, Examples) {
  EXPECT_NEAR(risk_parity_random_di(kMixed, 1), 0.25, 1e-15);
  EXPECT_NEAR(avg_risk_parity_random_di(0), 3.0 / 20.0, 1e-15);
  // The risk rises before it falls.
  EXPECT_GT(avg_risk_parity_random_di(1), avg_risk_parity_random_di(0));
}

TEST(RandomParity, ExhaustiveEnumeration) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const Vec4 th = oracle::dirichlet(rng);
    for (int n = 0; n <= 6; ++n) {
      EXPECT_NEAR(risk_parity_random_di(th, n), oracle::random_parity_risk(th, n), 1e-12);
    }
  }
}

TEST(RandomParity, AverageIsDirichletMeanOfPointwise) {
  // The pointwise risk is affine in sum theta^2, so averaging only needs
  // E[sum theta^2] = 2/5; check against the enumeration at that value.
  for (int n = 0; n <= 6; ++n) {
    const double a = oracle::random_parity_risk(kMixed, n);
    const double b = oracle::random_parity_risk(kVertex, n);
    // Linear interpolation in S between S = 1/4 and S = 1 to S = 2/5.
    const double avg = a + (b - a) * (0.4 - 0.25) / 0.75;
    EXPECT_NEAR(avg_risk_parity_random_di(n), avg, 1e-12) << n;
  }
  EXPECT_NEAR(avg_risk_parity_random_di(1), 0.3, 1e-15);
}

TEST(OrderedParity, Examples) {
  EXPECT_NEAR(risk_parity_ordered_di(kMixed, 3), 0.75, 1e-15);
  EXPECT_NEAR(avg_risk_parity_ordered_di(9), 0.2, 1e-15);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const Vec4 th = oracle::dirichlet(rng);
    EXPECT_NEAR(risk_parity_ordered_di(th, 30), 3.0 * risk_bsm_di(th, 30), 1e-15);
  }
  EXPECT_THROW(risk_parity_ordered_di(kMixed, 4), std::invalid_argument);
  EXPECT_THROW(avg_risk_parity_ordered_di(0), std::invalid_argument);
}

TEST(RandomParity, ApproachesOrderedForLargeN) {
  const double gap = avg_risk_parity_random_di(300) / avg_risk_parity_ordered_di(300) - 1.0;
  EXPECT_GT(gap, 0.0);
  EXPECT_LT(gap, 0.05);
}

TEST(OrderedParity, ExhaustiveEnumeration) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 20; ++k) {
    const Vec4 th = oracle::dirichlet(rng);
    for (int n : {3, 6, 9, 12}) {
      EXPECT_NEAR(risk_parity_ordered_di(th, n), oracle::ordered_parity_risk(th, n), 1e-12);
    }
  }
}

TEST(ParityBme, BoundExamples) {
  EXPECT_NEAR(bme_parity_upper_bound(0), 3.0 / 20.0, 1e-15);
  EXPECT_NEAR(bme_parity_upper_bound(6), 9.0 / 80.0, 1e-15);
  EXPECT_THROW(bme_parity_upper_bound(5), std::invalid_argument);
}

TEST(ParityBme, BoundIsPriorAverageOfPointwise) {
  std::mt19937_64 rng(7);
  for (int n : {0, 3, 30, 300}) {
    std::vector<double> v;
    v.reserve(1000000);
    for (int k = 0; k < 1000000; ++k) v.push_back(bme_parity_pointwise(oracle::dirichlet(rng), n));
    const auto st = oracle::mean_se(v);
    EXPECT_NEAR(st.mean, bme_parity_upper_bound(n), 4.0 * st.se + 1e-15) << n;
  }
}

TEST(BellRisk, RegimeSignChangeAtSixteen) {
  // d risk / d S has the sign of 16 - N.
  for (int n = 0; n < 40; ++n) {
    const double slope = risk_bsm_bme(kVertex, n) - risk_bsm_bme(kMixed, n);
    if (n < 16) EXPECT_GT(slope, 0.0) << n;
    if (n == 16) EXPECT_NEAR(slope, 0.0, 1e-15);
    if (n > 16) EXPECT_LT(slope, 0.0) << n;
  }
}

}  // namespace
}  // namespace bds
