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

#ifndef BDS_HARNESS_HPP
#define BDS_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bds/analytics.hpp"
#include "bds/estimators.hpp"
#include "bds/measurements.hpp"

namespace bds {

enum class EstimatorKind { di, mle, bme };
enum class LossKind { hs, infidelity };

std::string_view to_string(EstimatorKind kind);
std::string_view to_string(LossKind kind);
EstimatorKind parse_estimator(std::string_view name);
LossKind parse_loss(std::string_view name);

inline constexpr std::uint64_t kDefaultSeed = 20250101;

struct ExperimentConfig {
  Strategy strategy = Strategy::bell;
  EstimatorKind estimator = EstimatorKind::di;
  LossKind loss = LossKind::hs;
  PriorSpec prior = PriorSpec::uniform();
  std::vector<std::int64_t> n_values;
  std::int64_t samples = 1000;
  int grid_resolution = kDefaultGridResolution;
  std::uint64_t seed = kDefaultSeed;

  /// Throws std::invalid_argument on any inconsistency.
  void validate() const;
};

struct RiskPoint {
  std::int64_t n = 0;
  double mean_risk = 0.0;
  double std_error = 0.0;
  std::optional<double> analytic;
  /// Trials whose unphysical estimate was projected onto the simplex before
  /// computing the infidelity. Not serialised.
  std::int64_t projected = 0;
};

struct RiskCurve {
  ExperimentConfig config;
  /// "exact", "upper_bound" or "none".
  std::string analytic_kind = "none";
  std::vector<RiskPoint> points;
};

struct RunOptions {
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
};

/// Uniform draw from the simplex (normalised exponentials).
BellDiagonalState sample_prior_state(Rng& rng);

/// Independent per-trial seed mixed from (seed, N index, trial index).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t n_index,
                         std::size_t trial_index);

/// Losses of every trial at n_values[n_index], in trial order. `grid` may be
/// null for direct inversion.
std::vector<double> run_trials(const ExperimentConfig& config,
                               std::size_t n_index, const StateGrid* grid,
                               const RunOptions& options = {},
                               std::int64_t* projected = nullptr);

RiskCurve run_experiment(const ExperimentConfig& config,
                         const RunOptions& options = {});

class NoClosedForm : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct AnalyticPoint {
  std::int64_t n = 0;
  RiskFormulaResult result;
};

bool has_closed_form(Strategy strategy, EstimatorKind estimator);

/// Average-risk curve under the uniform prior. Throws NoClosedForm when no
/// formula or bound covers the combination.
std::vector<AnalyticPoint> analytic_curve(Strategy strategy,
                                          EstimatorKind estimator,
                                          const std::vector<std::int64_t>& n_values);

}  // namespace bds

#endif  // BDS_HARNESS_HPP
