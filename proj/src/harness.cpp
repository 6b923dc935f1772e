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

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <thread>

namespace bds {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double trial_loss(const ExperimentConfig& config, std::int64_t n,
                  std::uint64_t seed, const StateGrid* grid, bool* projected) {
  Rng rng(seed);
  const BellDiagonalState truth = sample_prior_state(rng);
  const OutcomeRecord record =
      sample_outcomes(truth, MeasurementPlan{config.strategy, n}, rng);
  Estimate estimate;
  switch (config.estimator) {
    case EstimatorKind::di:
      estimate = direct_inversion(record);
      break;
    case EstimatorKind::mle:
      estimate = mle(record, *grid);
      break;
    case EstimatorKind::bme:
      estimate = bme(record, *grid, config.prior);
      break;
  }
  *projected = false;
  if (config.loss == LossKind::hs) {
    return hs_loss(estimate.theta_hat, truth.theta());
  }
  Vec4 theta_hat = estimate.theta_hat;
  if (!estimate.physical || (theta_hat.array() < 0.0).any()) {
    theta_hat = project_to_simplex(theta_hat);
    *projected = !estimate.physical;
  }
  return infidelity_loss(theta_hat, truth.theta());
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::di:
      return "di";
    case EstimatorKind::mle:
      return "mle";
    case EstimatorKind::bme:
      return "bme";
  }
  return "unknown";
}

std::string_view to_string(LossKind kind) {
  return kind == LossKind::hs ? "hs" : "infidelity";
}

EstimatorKind parse_estimator(std::string_view name) {
  for (auto k : {EstimatorKind::di, EstimatorKind::mle, EstimatorKind::bme}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown estimator '" + std::string(name) + "'");
}

LossKind parse_loss(std::string_view name) {
  for (auto k : {LossKind::hs, LossKind::infidelity}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown loss '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  prior.validate();
  if (samples < 1) {
    throw std::invalid_argument("samples must be >= 1");
  }
  if (grid_resolution < 1) {
    throw std::invalid_argument("grid resolution must be >= 1");
  }
  for (auto n : n_values) {
    MeasurementPlan{strategy, n}.validate();
    if (n == 0 && estimator == EstimatorKind::di && !is_parity(strategy)) {
      throw std::invalid_argument("direct inversion needs N >= 1 for " +
                                  std::string(to_string(strategy)));
    }
  }
}

BellDiagonalState sample_prior_state(Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  Vec4 theta;
  for (int i = 0; i < 4; ++i) theta(i) = expo(rng);
  theta /= theta.sum();
  return BellDiagonalState::from_theta(theta);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t n_index,
                         std::size_t trial_index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(n_index));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(trial_index) * 0xd1342543de82ef95ULL));
  return h;
}

std::vector<double> run_trials(const ExperimentConfig& config,
                               std::size_t n_index, const StateGrid* grid,
                               const RunOptions& options,
                               std::int64_t* projected) {
  if (n_index >= config.n_values.size()) {
    throw std::out_of_range("N index out of range");
  }
  if (config.estimator != EstimatorKind::di && grid == nullptr) {
    throw std::invalid_argument("MLE and BME need a state grid");
  }
  const std::int64_t n = config.n_values[n_index];
  const auto samples = static_cast<std::size_t>(config.samples);
  std::vector<double> losses(samples);
  std::vector<char> was_projected(samples, 0);

  unsigned workers = options.threads == 0 ? std::thread::hardware_concurrency()
                                          : options.threads;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(samples)));

  auto work = [&](unsigned worker) {
    for (std::size_t i = worker; i < samples; i += workers) {
      bool flag = false;
      losses[i] = trial_loss(config, n, trial_seed(config.seed, n_index, i), grid, &flag);
      was_projected[i] = flag ? 1 : 0;
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  if (projected != nullptr) {
    *projected = std::count(was_projected.begin(), was_projected.end(), 1);
  }
  return losses;
}

RiskCurve run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  RiskCurve curve;
  curve.config = config;

  std::unique_ptr<StateGrid> grid;
  if (config.estimator != EstimatorKind::di) {
    grid = std::make_unique<StateGrid>(config.grid_resolution);
  }
  const bool with_reference = config.loss == LossKind::hs &&
                              config.prior.is_uniform() &&
                              has_closed_form(config.strategy, config.estimator);

  for (std::size_t ni = 0; ni < config.n_values.size(); ++ni) {
    RiskPoint point;
    point.n = config.n_values[ni];
    const std::vector<double> losses =
        run_trials(config, ni, grid.get(), options, &point.projected);
    // Reduce in index order so the result does not depend on threading.
    double sum = 0.0;
    for (double l : losses) sum += l;
    const double count = static_cast<double>(losses.size());
    point.mean_risk = sum / count;
    if (losses.size() > 1) {
      double ss = 0.0;
      for (double l : losses) ss += (l - point.mean_risk) * (l - point.mean_risk);
      point.std_error = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
    }
    if (with_reference) {
      try {
        const auto ref = analytic_curve(config.strategy, config.estimator, {point.n});
        point.analytic = ref.front().result.value;
        curve.analytic_kind = ref.front().result.upper_bound ? "upper_bound" : "exact";
      } catch (const std::invalid_argument&) {
        // Formula undefined at this N (e.g. 3/(5N) at N = 0).
      }
    }
    curve.points.push_back(point);
  }
  return curve;
}

bool has_closed_form(Strategy strategy, EstimatorKind estimator) {
  switch (strategy) {
    case Strategy::bell:
      return true;
    case Strategy::parity_random:
      return estimator == EstimatorKind::di;
    case Strategy::parity_ordered:
      return estimator == EstimatorKind::di || estimator == EstimatorKind::bme;
    default:
      return false;
  }
}

std::vector<AnalyticPoint> analytic_curve(Strategy strategy,
                                          EstimatorKind estimator,
                                          const std::vector<std::int64_t>& n_values) {
  if (!has_closed_form(strategy, estimator)) {
    throw NoClosedForm("no closed form for " + std::string(to_string(strategy)) +
                       " + " + std::string(to_string(estimator)));
  }
  std::vector<AnalyticPoint> out;
  out.reserve(n_values.size());
  for (auto n : n_values) {
    AnalyticPoint p;
    p.n = n;
    if (strategy == Strategy::bell && estimator == EstimatorKind::bme) {
      p.result = {avg_risk_bsm_bme(n), "avg_risk_bsm_bme", false};
    } else if (strategy == Strategy::bell) {
      // MLE and direct inversion coincide for Bell-basis data.
      p.result = {avg_risk_bsm_di(n), "avg_risk_bsm_di", false};
    } else if (strategy == Strategy::parity_random) {
      p.result = {avg_risk_parity_random_di(n), "avg_risk_parity_random_di", false};
    } else if (estimator == EstimatorKind::di) {
      p.result = {avg_risk_parity_ordered_di(n), "avg_risk_parity_ordered_di", false};
    } else {
      p.result = {bme_parity_upper_bound(n), "bme_parity_upper_bound", true};
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace bds
