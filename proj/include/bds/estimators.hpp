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

#ifndef BDS_ESTIMATORS_HPP
#define BDS_ESTIMATORS_HPP

#include <cstddef>
#include <optional>

#include "bds/measurements.hpp"
#include "bds/states.hpp"

namespace bds {

using GridMatrix = Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor>;

inline constexpr int kDefaultGridResolution = 37;

/// Lattice theta = k / m on the probability simplex, k >= 0 summing to m,
/// in lexicographic order of k. Each point also carries a cubature weight
/// (1, 1/2, 7/36, 1/24 for 0, 1, 2, 3 vanishing coordinates) so that sums
/// over the grid approximate integrals over the simplex without a boundary
/// bias.
class StateGrid {
 public:
  explicit StateGrid(int resolution);

  int resolution() const { return resolution_; }
  std::size_t size() const { return static_cast<std::size_t>(thetas_.rows()); }
  const GridMatrix& thetas() const { return thetas_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  Vec4 theta(std::size_t index) const {
    return thetas_.row(static_cast<Eigen::Index>(index)).transpose();
  }
  BellDiagonalState point(std::size_t index) const {
    return BellDiagonalState::from_theta(theta(index));
  }

 private:
  int resolution_;
  GridMatrix thetas_;
  Eigen::VectorXd weights_;
};

/// Throws std::invalid_argument for m < 1.
StateGrid build_grid(int resolution);

/// Dirichlet prior on theta.
struct PriorSpec {
  Vec4 alpha = Vec4::Ones();

  static PriorSpec uniform() { return {Vec4::Ones()}; }
  static PriorSpec jeffreys() { return {Vec4::Constant(0.5)}; }

  bool is_uniform() const { return (alpha.array() == 1.0).all(); }
  void validate() const;
};

struct Estimate {
  Vec4 theta_hat = Vec4::Constant(0.25);
  bool physical = true;
  std::optional<Vec4> posterior_mean;
  std::optional<Eigen::Matrix4d> posterior_cov;

  Vec3 t_hat() const { return theta_to_t_matrix() * theta_hat; }
};

/// Outcome likelihood in linear form: the probability of term j is
/// q_j . theta (theta on the simplex), observed counts_j times.
class LikelihoodModel {
 public:
  explicit LikelihoodModel(const OutcomeRecord& record);

  const Eigen::Matrix<double, Eigen::Dynamic, 4>& functionals() const {
    return q_;
  }
  const Eigen::VectorXd& counts() const { return counts_; }
  std::int64_t total_shots() const { return total_shots_; }

  /// -inf when an observed outcome has (numerically) zero probability.
  double log_likelihood(const Vec4& theta) const;
  Eigen::VectorXd log_likelihood(const StateGrid& grid) const;

 private:
  void add_term(const Vec4& q, double count);

  Eigen::Matrix<double, Eigen::Dynamic, 4> q_;
  Eigen::VectorXd counts_;
  Eigen::Index size_ = 0;
  std::int64_t total_shots_ = 0;
};

/// Probabilities below this are treated as exact zeros by the likelihood.
inline constexpr double kProbabilityFloor = 1e-14;

double log_likelihood(const OutcomeRecord& record, const Vec4& theta);

/// Bell plans: theta_hat = x / N. Parity plans: t_i = 2 x_{i,0} / y_i - 1,
/// or 0 for an unmeasured axis. Other plans: least-squares fit of t to the
/// observed frequencies under the affine Born model, minimum-norm in
/// directions the data does not constrain. Unphysical results are returned
/// as is, with physical = false.
Estimate direct_inversion(const OutcomeRecord& record);

struct MleOptions {
  bool refine = true;
  int max_sweeps = 400;
  /// Line-search tolerance on theta and stopping threshold per sweep.
  double tolerance = 1e-10;
};

/// Grid argmax of the likelihood (lowest index on ties), then pairwise
/// golden-section coordinate ascent inside the simplex.
Estimate mle(const OutcomeRecord& record, const StateGrid& grid,
             const MleOptions& options = {});

/// Posterior mean over the grid with a Dirichlet prior; fills
/// posterior_mean and posterior_cov.
Estimate bme(const OutcomeRecord& record, const StateGrid& grid,
             const PriorSpec& prior = PriorSpec::uniform());

Eigen::Matrix4d posterior_covariance(const OutcomeRecord& record,
                                     const StateGrid& grid,
                                     const PriorSpec& prior = PriorSpec::uniform());

/// Exact conjugate posterior mean (x + alpha) / (N + sum alpha) for Bell
/// plans, with the Dirichlet posterior covariance.
Estimate bme_bell_conjugate(const OutcomeRecord& record,
                            const PriorSpec& prior = PriorSpec::uniform());

/// Euclidean projection onto the probability simplex.
Vec4 project_to_simplex(const Vec4& v);

}  // namespace bds

#endif  // BDS_ESTIMATORS_HPP
