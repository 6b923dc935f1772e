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

#include "bds/harness.hpp"

#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

namespace bds {
namespace {

ExperimentConfig make(Strategy s, EstimatorKind e, std::vector<std::int64_t> n,
                      std::int64_t samples) {
  ExperimentConfig c;
  c.strategy = s;
  c.estimator = e;
  c.n_values = std::move(n);
  c.samples = samples;
  return c;
}

TEST(PriorSampling, DirichletMoments) {
  Rng rng(1);
  const int draws = 100000;
  std::array<std::vector<double>, 3> theta, theta_sq, t_sq;
  for (int k = 0; k < draws; ++k) {
    const auto s = sample_prior_state(rng);
    for (int i = 0; i < 3; ++i) {
      theta[static_cast<std::size_t>(i)].push_back(s.theta()(i));
      theta_sq[static_cast<std::size_t>(i)].push_back(s.theta()(i) * s.theta()(i));
      t_sq[static_cast<std::size_t>(i)].push_back(s.t()(i) * s.t()(i));
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    auto st = oracle::mean_se(theta[i]);
    EXPECT_NEAR(st.mean, 0.25, 3 * st.se);
    st = oracle::mean_se(theta_sq[i]);
    EXPECT_NEAR(st.mean, 0.1, 3 * st.se);
    st = oracle::mean_se(t_sq[i]);
    EXPECT_NEAR(st.mean, 0.2, 3 * st.se);
  }
}

TEST(TrialSeed, DistinctAcrossIndices) {
  std::set<std::uint64_t> seen;
  for (std::size_t n = 0; n < 10; ++n)
    for (std::size_t t = 0; t < 1000; ++t) seen.insert(trial_seed(42, n, t));
  EXPECT_EQ(seen.size(), 10000u);
  EXPECT_NE(trial_seed(1, 0, 0), trial_seed(2, 0, 0));
}

TEST(RunExperiment, BellDirectInversionMatchesClosedForm) {
  const auto curve = run_experiment(make(Strategy::bell, EstimatorKind::di, {10}, 4000));
  ASSERT_EQ(curve.points.size(), 1u);
  const auto& p = curve.points[0];
  EXPECT_NEAR(p.mean_risk, 0.06, 3 * p.std_error);
  ASSERT_TRUE(p.analytic.has_value());
  EXPECT_NEAR(*p.analytic, 0.06, 1e-15);
  EXPECT_EQ(curve.analytic_kind, "exact");
}

TEST(RunExperiment, RandomParityRiskRisesFirst) {
  const auto curve =
      run_experiment(make(Strategy::parity_random, EstimatorKind::di, {0, 1}, 4000));
  EXPECT_GT(curve.points[1].mean_risk, curve.points[0].mean_risk);
}

TEST(RunExperiment, DeterministicAcrossRunsAndThreads) {
  auto c = make(Strategy::mub, EstimatorKind::bme, {5, 10}, 60);
  c.grid_resolution = 12;
  const auto a = run_experiment(c);
  const auto b = run_experiment(c);
  const auto d = run_experiment(c, RunOptions{3});
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].mean_risk, b.points[i].mean_risk);
    EXPECT_EQ(a.points[i].std_error, b.points[i].std_error);
    EXPECT_EQ(a.points[i].mean_risk, d.points[i].mean_risk);
    EXPECT_EQ(a.points[i].std_error, d.points[i].std_error);
  }
  c.seed += 1;
  EXPECT_NE(run_experiment(c).points[0].mean_risk, a.points[0].mean_risk);
}

TEST(RunExperiment, StandardErrorScalesAsInverseRootSamples) {
  const auto small = run_experiment(make(Strategy::bell, EstimatorKind::di, {20}, 2000));
  const auto large = run_experiment(make(Strategy::bell, EstimatorKind::di, {20}, 8000));
  const double ratio = small.points[0].std_error / large.points[0].std_error;
  EXPECT_GT(ratio, 1.8);
  EXPECT_LT(ratio, 2.2);
}

TEST(RunExperiment, SingleSampleHasZeroError) {
  const auto c = run_experiment(make(Strategy::bell, EstimatorKind::di, {4}, 1));
  EXPECT_EQ(c.points[0].std_error, 0.0);
  EXPECT_GE(c.points[0].mean_risk, 0.0);
}

TEST(RunExperiment, NoReferenceWithoutClosedForm) {
  auto c = make(Strategy::pauli, EstimatorKind::di, {9}, 10);
  EXPECT_FALSE(run_experiment(c).points[0].analytic.has_value());
  EXPECT_EQ(run_experiment(c).analytic_kind, "none");
  c = make(Strategy::parity_ordered, EstimatorKind::bme, {3}, 10);
  c.grid_resolution = 8;
  EXPECT_EQ(run_experiment(c).analytic_kind, "upper_bound");
  c.loss = LossKind::infidelity;
  EXPECT_FALSE(run_experiment(c).points[0].analytic.has_value());
}

TEST(RunExperiment, InfidelityProjectsUnphysicalEstimates) {
  auto c = make(Strategy::parity_ordered, EstimatorKind::di, {3}, 200);
  c.loss = LossKind::infidelity;
  const auto curve = run_experiment(c);
  EXPECT_GT(curve.points[0].projected, 0);
  EXPECT_GE(curve.points[0].mean_risk, 0.0);
  EXPECT_LE(curve.points[0].mean_risk, 1.0);
}

TEST(ExperimentConfig, Validation) {
  EXPECT_THROW(make(Strategy::pauli, EstimatorKind::di, {10}, 10).validate(), std::invalid_argument);
  EXPECT_THROW(make(Strategy::bell, EstimatorKind::di, {10}, 0).validate(), std::invalid_argument);
  EXPECT_THROW(make(Strategy::bell, EstimatorKind::di, {0}, 10).validate(), std::invalid_argument);
  EXPECT_NO_THROW(make(Strategy::bell, EstimatorKind::bme, {0}, 10).validate());
  EXPECT_NO_THROW(make(Strategy::parity_random, EstimatorKind::di, {0}, 10).validate());
  auto c = make(Strategy::bell, EstimatorKind::bme, {4}, 10);
  c.prior.alpha(2) = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(AnalyticCurve, Examples) {
  auto pts = analytic_curve(Strategy::bell, EstimatorKind::di, {5, 10});
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_NEAR(pts[0].result.value, 0.12, 1e-15);
  EXPECT_NEAR(pts[1].result.value, 0.06, 1e-15);
  pts = analytic_curve(Strategy::parity_ordered, EstimatorKind::di, {9});
  EXPECT_NEAR(pts[0].result.value, 0.2, 1e-15);
  EXPECT_FALSE(pts[0].result.upper_bound);
  pts = analytic_curve(Strategy::parity_ordered, EstimatorKind::bme, {6});
  EXPECT_TRUE(pts[0].result.upper_bound);
  EXPECT_THROW(analytic_curve(Strategy::mub, EstimatorKind::bme, {9}), NoClosedForm);
}

TEST(Names, RoundTrip) {
  for (auto e : {EstimatorKind::di, EstimatorKind::mle, EstimatorKind::bme})
    EXPECT_EQ(parse_estimator(to_string(e)), e);
  for (auto l : {LossKind::hs, LossKind::infidelity}) EXPECT_EQ(parse_loss(to_string(l)), l);
  EXPECT_THROW(parse_estimator("lsq"), std::invalid_argument);
  EXPECT_THROW(parse_loss("trace"), std::invalid_argument);
}

}  // namespace
}  // namespace bds
